#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "zipper/zg_io.hpp"

namespace zipper {

// SKI combinator terms. Juxtaposition is application and associates left.
struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    enum class Op { S, K, I, App };
    Op op;
    Term fn;
    Term arg;
};

Term s_term();
Term k_term();
Term i_term();
Term app(Term fn, Term arg);

bool term_eq(const Term& a, const Term& b);
int term_size(const Term& t);  // number of combinator leaves
std::string to_string(const Term& t);

// Throws ParseError. Alphabet: S K I ( ) and whitespace.
Term parse_term(std::string_view text);

struct NormalForm {
    Term term;  // null when fuel ran out
    int steps = 0;
    bool fuel_exhausted = false;
};

// Leftmost-outermost reduction with I x -> x, K x y -> x,
// S x y z -> (x z)(y z). Fuel counts contractions.
NormalForm oracle_nf(const Term& t, int fuel);

Term random_term(std::mt19937_64& rng, int max_size);

}  // namespace zipper
