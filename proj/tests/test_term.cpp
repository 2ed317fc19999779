#include <doctest.h>

#include "zipper/term.hpp"

using namespace zipper;

TEST_CASE("juxtaposition associates left") {
    Term t = parse_term("S K K");
    REQUIRE(t->op == TermNode::Op::App);
    CHECK(t->fn->op == TermNode::Op::App);
    CHECK(t->arg->op == TermNode::Op::K);
    CHECK(term_eq(t, app(app(s_term(), k_term()), k_term())));
    CHECK(to_string(t) == "S K K");
}

TEST_CASE("parentheses group") {
    Term t = parse_term("S (K K)");
    CHECK(term_eq(t, app(s_term(), app(k_term(), k_term()))));
    CHECK(to_string(t) == "S (K K)");
    CHECK(term_eq(parse_term(to_string(t)), t));
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse_term("S K )"), ParseError);
    CHECK_THROWS_AS(parse_term("(S K"), ParseError);
    CHECK_THROWS_AS(parse_term("S x"), ParseError);
    CHECK_THROWS_AS(parse_term("   "), ParseError);
}

TEST_CASE("oracle reduces the axioms") {
    auto nf = [](const char* s) { return oracle_nf(parse_term(s), 200); };
    CHECK(term_eq(nf("I K").term, k_term()));
    CHECK(term_eq(nf("S K K I").term, i_term()));
    CHECK(term_eq(nf("K I (K I)").term, i_term()));
    CHECK(term_eq(nf("S K K").term, parse_term("S K K")));  // unsaturated: no redex
    CHECK(term_eq(nf("K (I I)").term, parse_term("K I")));
}

TEST_CASE("oracle reports fuel exhaustion on divergent terms") {
    NormalForm r = oracle_nf(parse_term("S I I (S I I)"), 100);
    CHECK(r.fuel_exhausted);
    CHECK(r.term == nullptr);
}

TEST_CASE("more fuel never changes a reached normal form") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Term t = random_term(rng, 10);
        NormalForm a = oracle_nf(t, 300);
        if (a.fuel_exhausted) continue;
        NormalForm b = oracle_nf(t, 3000);
        CHECK(term_eq(a.term, b.term));
        CHECK(a.steps == b.steps);
    }
}

TEST_CASE("random terms respect the size bound") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        int n = term_size(random_term(rng, 12));
        CHECK(n >= 1);
        CHECK(n <= 12);
    }
}
