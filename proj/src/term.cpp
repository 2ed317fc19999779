#include "zipper/term.hpp"

#include <unordered_set>
#include <vector>

namespace zipper {

namespace {

Term leaf(TermNode::Op op) {
    static const Term s = std::make_shared<TermNode>(TermNode{TermNode::Op::S, nullptr, nullptr});
    static const Term k = std::make_shared<TermNode>(TermNode{TermNode::Op::K, nullptr, nullptr});
    static const Term i = std::make_shared<TermNode>(TermNode{TermNode::Op::I, nullptr, nullptr});
    switch (op) {
        case TermNode::Op::S: return s;
        case TermNode::Op::K: return k;
        default: return i;
    }
}

}  // namespace

Term s_term() { return leaf(TermNode::Op::S); }
Term k_term() { return leaf(TermNode::Op::K); }
Term i_term() { return leaf(TermNode::Op::I); }

Term app(Term fn, Term arg) {
    return std::make_shared<TermNode>(TermNode{TermNode::Op::App, std::move(fn), std::move(arg)});
}

bool term_eq(const Term& a, const Term& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    if (a->op != TermNode::Op::App) return true;
    return term_eq(a->fn, b->fn) && term_eq(a->arg, b->arg);
}

int term_size(const Term& t) {
    if (t->op != TermNode::Op::App) return 1;
    return term_size(t->fn) + term_size(t->arg);
}

std::string to_string(const Term& t) {
    switch (t->op) {
        case TermNode::Op::S: return "S";
        case TermNode::Op::K: return "K";
        case TermNode::Op::I: return "I";
        case TermNode::Op::App: {
            std::string fn = to_string(t->fn);
            std::string arg = to_string(t->arg);
            if (t->arg->op == TermNode::Op::App) arg = "(" + arg + ")";
            return fn + " " + arg;
        }
    }
    return "?";
}

namespace {

struct TermParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(1, static_cast<int>(pos + 1), msg);
    }
    std::optional<Term> atom() {
        skip_ws();
        if (pos >= text.size()) return std::nullopt;
        char c = text[pos];
        switch (c) {
            case 'S': ++pos; return s_term();
            case 'K': ++pos; return k_term();
            case 'I': ++pos; return i_term();
            case '(': {
                ++pos;
                Term t = expr();
                skip_ws();
                if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
                ++pos;
                return t;
            }
            case ')': return std::nullopt;
            default: fail(std::string("unexpected character '") + c + "'");
        }
    }
    Term expr() {
        auto first = atom();
        if (!first) fail("expected a term");
        Term acc = *first;
        while (auto next = atom()) acc = app(acc, *next);
        return acc;
    }
};

}  // namespace

Term parse_term(std::string_view text) {
    TermParser p{text};
    p.skip_ws();
    if (p.pos >= text.size()) throw ParseError(1, 1, "empty input");
    Term t = p.expr();
    p.skip_ws();
    if (p.pos < text.size()) p.fail("trailing input");
    return t;
}

namespace {

// Contract the leftmost-outermost redex, if any. Subterms already known to
// be redex-free are skipped; they are immutable and shared, so the property
// is stable across steps. Without the cache the search re-walks subtrees
// shared by S contractions exponentially often.
std::optional<Term> step(const Term& t, std::unordered_set<const TermNode*>& in_nf) {
    if (t->op != TermNode::Op::App || in_nf.count(t.get())) return std::nullopt;
    // I x
    if (t->fn->op == TermNode::Op::I) return t->arg;
    // K x y
    if (t->fn->op == TermNode::Op::App && t->fn->fn->op == TermNode::Op::K) return t->fn->arg;
    // S x y z
    if (t->fn->op == TermNode::Op::App && t->fn->fn->op == TermNode::Op::App &&
        t->fn->fn->fn->op == TermNode::Op::S) {
        Term x = t->fn->fn->arg, y = t->fn->arg, z = t->arg;
        return app(app(x, z), app(y, z));
    }
    if (auto fn = step(t->fn, in_nf)) return app(*fn, t->arg);
    if (auto arg = step(t->arg, in_nf)) return app(t->fn, *arg);
    in_nf.insert(t.get());
    return std::nullopt;
}

}  // namespace

NormalForm oracle_nf(const Term& t, int fuel) {
    Term cur = t;
    int steps = 0;
    std::unordered_set<const TermNode*> in_nf;
    std::vector<Term> keepalive;  // cached pointers must not be reused
    while (true) {
        keepalive.push_back(cur);
        auto next = step(cur, in_nf);
        if (!next) return {cur, steps, false};
        if (steps >= fuel) return {nullptr, steps, true};
        cur = *next;
        ++steps;
    }
}

Term random_term(std::mt19937_64& rng, int max_size) {
    int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
    // Recursive split keeps the leaf count exactly `size`.
    struct Gen {
        std::mt19937_64& rng;
        Term build(int n) {
            if (n == 1) {
                switch (rng() % 3) {
                    case 0: return s_term();
                    case 1: return k_term();
                    default: return i_term();
                }
            }
            int left = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
            return app(build(left), build(n - left));
        }
    } gen{rng};
    return gen.build(size);
}

}  // namespace zipper
