#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "zipper/combinators.hpp"
#include "zipper/isomorphism.hpp"
#include "zipper/moves.hpp"
#include "zipper/term.hpp"

using namespace zipper;
using namespace zipper::testutil;

namespace {

int expected_nodes(const Term& t) {
    switch (t->op) {
        case TermNode::Op::I: return 1;
        case TermNode::Op::K: return 2;
        case TermNode::Op::S: return 5;
        case TermNode::Op::App: return 1 + expected_nodes(t->fn) + expected_nodes(t->arg);
    }
    return 0;
}

std::size_t free_out_count(const ZGraph& g) {
    std::size_t n = 0;
    for (const auto& [aid, a] : g.arrows()) n += is_free(a.head) ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("compile I: one node, one internal arrow, one free out") {
    ZGraph g = compile(i_term());
    CHECK(g.nodes().size() == 1);
    CHECK(g.arrows().size() == 2);
    CHECK(free_out_count(g) == 1);
    CHECK(validate(g).empty());
}

TEST_CASE("compile K: a (-2) half-zipper with its spare variable terminated") {
    ZGraph g = compile(k_term());
    auto census = kind_census(g);
    CHECK(census == std::map<std::string, int>{{"ZM2", 1}, {"T", 1}});
    CHECK(free_out_count(g) == 1);
}

TEST_CASE("compile S: the (x z)(y z) body behind a (-3) tower") {
    auto census = kind_census(compile(s_term()));
    CHECK(census == std::map<std::string, int>{{"ZM3", 1}, {"FO", 1}, {"ZP1", 3}});
}

TEST_CASE("compile of an application is a (+1) half-zipper joining the parts") {
    ZGraph g = compile(app(i_term(), i_term()));
    CHECK(g.nodes().size() == 3);
    CHECK(free_out_count(g) == 1);
}

TEST_CASE("node count follows the per-combinator formula") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        Term t = random_term(rng, 12);
        ZGraph g = compile(t);
        CHECK(static_cast<int>(g.nodes().size()) == expected_nodes(t));
        CHECK(free_out_count(g) == 1);
        CHECK(validate(g).empty());
    }
    CHECK(compile(parse_term("S K K")).nodes().size() == 11);
}

TEST_CASE("readback inverts compile") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 500; ++i) {
        Term t = random_term(rng, 12);
        Readback rb = readback(compile(t));
        REQUIRE(rb.term.has_value());
        CHECK(term_eq(*rb.term, t));
    }
}

TEST_CASE("readback ignores residual loops") {
    ZGraph g = compile(parse_term("S K K"));
    g.add_loops(4);
    Readback rb = readback(g);
    REQUIRE(rb.term.has_value());
    CHECK(term_eq(*rb.term, parse_term("S K K")));
}

TEST_CASE("readback reads merged application towers") {
    ZGraph g = compile(parse_term("S K K"));
    auto merges = enumerate_matches(g, MoveKind::TowerMerge);
    REQUIRE(!merges.empty());
    ZGraph merged = apply(g, merges.front());
    Readback rb = readback(merged);
    REQUIRE(rb.term.has_value());
    CHECK(term_eq(*rb.term, parse_term("S K K")));
}

TEST_CASE("readback fails on zipper nodes and names the offender") {
    ZGraph g = compile(app(i_term(), i_term()));
    auto clicks = enumerate_matches(g, MoveKind::Click);
    REQUIRE(clicks.size() == 1);
    ZGraph clicked = apply(g, clicks.front());
    Readback rb = readback(clicked);
    CHECK_FALSE(rb.term.has_value());
    CHECK(rb.offending.has_value());
}

TEST_CASE("readback rejects graphs with the wrong boundary") {
    CHECK_FALSE(readback(parse_zg("Z 1 a c d x\n")).term.has_value());
    CHECK_FALSE(readback(ZGraph{}).term.has_value());
    ZGraph two_outs = compile(i_term());
    compile_into(two_outs, k_term());
    CHECK_FALSE(readback(two_outs).term.has_value());
}
