#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "zipper/combinators.hpp"
#include "zipper/graph.hpp"
#include "zipper/isomorphism.hpp"
#include "zipper/moves.hpp"
#include "zipper/term.hpp"

using namespace zipper;

TEST_CASE("validate accepts the empty graph") {
    ZGraph g;
    CHECK(validate(g).empty());
}

TEST_CASE("validate accepts a termination node fed by a free-tailed arrow") {
    ZGraph g = parse_zg("T x\n");
    CHECK(validate(g).empty());
    CHECK(g.nodes().size() == 1);
    CHECK(g.arrows().size() == 1);
}

TEST_CASE("validate flags two arrows on one port") {
    ZGraph g;
    NodeId m = g.add_node(zm(1));
    g.add_arrow(FreeEnd{"a"}, PortRef{m, in0()});
    g.add_arrow(FreeEnd{"b"}, PortRef{m, in0()});
    auto diags = validate(g);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().code == "port-uniqueness");
}

TEST_CASE("validate flags a tail on an in port and bad port indices") {
    ZGraph g;
    NodeId m = g.add_node(zm(1));
    g.add_arrow(PortRef{m, in0()}, FreeEnd{"x"});  // tails sit on out ports
    g.add_arrow(PortRef{m, var(2)}, FreeEnd{"y"});  // no var 2 on a (-1) half-zipper
    auto diags = validate(g);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].code == "direction-mismatch");
    CHECK(diags[1].code == "invalid-port");
}

TEST_CASE("strip_loops returns the count and a loop-free graph") {
    ZGraph g;
    g.add_loops(3);
    auto [bare, n] = strip_loops(g);
    CHECK(n == 3);
    CHECK(bare.loop_count() == 0);
    CHECK(bare.nodes().empty());

    ZGraph k = compile(k_term());
    auto [same, zero] = strip_loops(k);
    CHECK(zero == 0);
    CHECK(isomorphic(same, k));
}

TEST_CASE("components splits disjoint combinator graphs") {
    ZGraph g;
    compile_into(g, i_term());
    compile_into(g, k_term());
    auto comps = components(g);
    REQUIRE(comps.size() == 2);
    bool i_found = false, k_found = false;
    for (const auto& c : comps) {
        i_found = i_found || isomorphic(c, compile(i_term()));
        k_found = k_found || isomorphic(c, compile(k_term()));
    }
    CHECK(i_found);
    CHECK(k_found);
}

TEST_CASE("components keeps a connected graph whole and separates loops") {
    CHECK(components(compile(s_term())).size() == 1);

    ZGraph g = compile(i_term());
    g.add_loops(1);
    auto comps = components(g);
    REQUIRE(comps.size() == 2);
    std::uint32_t loops = 0;
    for (const auto& c : comps) loops += c.loop_count();
    CHECK(loops == 1);
}

TEST_CASE("components partition the node, arrow and loop multisets") {
    ZGraph g = compile(parse_term("S (K I) K"));
    g.add_loops(2);
    g.add_arrow(FreeEnd{"u"}, FreeEnd{"v"});
    std::size_t nodes = 0, arrows = 0, loops = 0;
    for (const auto& c : components(g)) {
        nodes += c.nodes().size();
        arrows += c.arrows().size();
        loops += c.loop_count();
    }
    CHECK(nodes == g.nodes().size());
    CHECK(arrows == g.arrows().size());
    CHECK(loops == g.loop_count());
}

TEST_CASE("isomorphic is reflexive and distinguishes kinds") {
    ZGraph i = compile(i_term());
    ZGraph k = compile(k_term());
    CHECK(isomorphic(i, i));
    CHECK_FALSE(isomorphic(i, k));
}

TEST_CASE("fan-out arm order needs the quotient flag") {
    // Arms lead to distinguishable targets; the oracle for the unordered
    // check is one co-comm application.
    ZGraph g;
    NodeId f = g.add_node(fan_out());
    NodeId t = g.add_node(termination());
    NodeId m = g.add_node(zm(1));
    g.add_arrow(FreeEnd{"in"}, PortRef{f, in0()});
    g.add_arrow(PortRef{f, var(1)}, PortRef{t, in0()});
    g.add_arrow(PortRef{f, var(2)}, PortRef{m, in0()});
    g.add_arrow(PortRef{m, out0()}, FreeEnd{"o"});
    g.add_arrow(PortRef{m, var(1)}, FreeEnd{"v"});

    auto swaps = enumerate_matches(g, MoveKind::CoComm);
    REQUIRE(swaps.size() == 1);
    ZGraph swapped = apply(g, swaps.front());
    CHECK_FALSE(isomorphic(g, swapped));
    CHECK(isomorphic(g, swapped, {/*fanout_outs_unordered=*/true}));
}

TEST_CASE("isomorphism is an equivalence on a small corpus") {
    std::vector<ZGraph> corpus{compile(i_term()), compile(k_term()), compile(s_term()),
                               compile(parse_term("S K K")), compile(parse_term("K (I I)"))};
    for (std::size_t a = 0; a < corpus.size(); ++a)
        for (std::size_t b = 0; b < corpus.size(); ++b) {
            bool ab = isomorphic(corpus[a], corpus[b]);
            CHECK(ab == isomorphic(corpus[b], corpus[a]));
            CHECK(ab == (a == b));
        }
}
