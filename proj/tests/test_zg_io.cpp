#include <doctest.h>

#include "test_util.hpp"
#include "zipper/combinators.hpp"
#include "zipper/dot.hpp"
#include "zipper/isomorphism.hpp"
#include "zipper/term.hpp"
#include "zipper/zg_io.hpp"

using namespace zipper;
using namespace zipper::testutil;

TEST_CASE("ZM line with a repeated label builds the identity combinator graph") {
    // Hand-built lambda-x.x: the variable arrow feeds the body port.
    ZGraph expect;
    NodeId m = expect.add_node(zm(1));
    expect.add_arrow(PortRef{m, var(1)}, PortRef{m, in0()});
    expect.add_arrow(PortRef{m, out0()}, FreeEnd{"out"});

    ZGraph got = parse_zg("ZM 1 x out x\n");
    CHECK(validate(got).empty());
    CHECK(isomorphic(got, expect));
    CHECK(isomorphic(got, compile(i_term())));
}

TEST_CASE("LOOP lines count loops") {
    ZGraph g = parse_zg("# two loops\nLOOP\nLOOP\n");
    CHECK(g.loop_count() == 2);
    CHECK(g.nodes().empty());
}

TEST_CASE("token count must match the declared arity") {
    CHECK_THROWS_AS(parse_zg("ZM 1 x out\n"), ParseError);
    CHECK_THROWS_AS(parse_zg("ZM 0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_zg("FO a b\n"), ParseError);
}

TEST_CASE("a label may not appear twice in one position class") {
    CHECK_THROWS_AS(parse_zg("T x\nT x\n"), ParseError);
    CHECK_THROWS_AS(parse_zg("ZM 1 a o1 x\nZM 1 b o2 x\n"), ParseError);
}

TEST_CASE("ARROW labels may not pair with node ports") {
    CHECK_THROWS_AS(parse_zg("ZM 1 x out x\nARROW q out\n"), ParseError);
    CHECK_THROWS_AS(parse_zg("T t\nARROW t q\n"), ParseError);
}

TEST_CASE("unknown statements are syntax errors with positions") {
    try {
        parse_zg("LOOP\nBOGUS a b\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("emit of the empty graph is empty") { CHECK(emit_zg(ZGraph{}) == ""); }

TEST_CASE("emit of loops is LOOP lines") {
    ZGraph g;
    g.add_loops(2);
    CHECK(emit_zg(g) == "LOOP\nLOOP\n");
}

TEST_CASE("emit is canonical across construction order") {
    ZGraph a;
    compile_into(a, i_term());
    compile_into(a, k_term());
    ZGraph b;
    compile_into(b, k_term());
    compile_into(b, i_term());
    CHECK(emit_zg(a) == emit_zg(b));
    CHECK(fingerprint(a) == fingerprint(b));
}

TEST_CASE("round trip is the identity up to isomorphism") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        ZGraph g = compile(random_term(rng, 10));
        if (i % 3 == 0) g.add_loops(i % 5);
        if (i % 4 == 0) g.add_arrow(FreeEnd{"u"}, FreeEnd{"v"});
        ZGraph back = parse_zg(emit_zg(g));
        CHECK(validate(back).empty());
        CHECK(isomorphic(back, g));
    }
    // Free ends, a zipper node, a standalone arrow and loops in one graph.
    ZGraph g = parse_zg("Z 2 a b c d e f\nARROW p q\nLOOP\nT t\n");
    CHECK(isomorphic(parse_zg(emit_zg(g)), g));
}

TEST_CASE("dot export shows every node kind and the loop pseudo-node") {
    ZGraph g = compile(s_term());
    g.add_loops(1);
    std::string dot = emit_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("ZM3") != std::string::npos);
    CHECK(dot.find("FO") != std::string::npos);
    CHECK(dot.find("ZP1") != std::string::npos);
    CHECK(dot.find("loop") != std::string::npos);
    CHECK(dot.find("taillabel=\"0'\"") != std::string::npos);

    CHECK(emit_dot(ZGraph{}).find("digraph") != std::string::npos);
    std::string t = emit_dot(parse_zg("T x\n"));
    CHECK(t.find("\"T\"") != std::string::npos);
}

TEST_CASE("dot export of the S graph counts one ZM3, one FO, three ZP1") {
    std::string dot = emit_dot(compile(s_term()));
    auto count = [&](const std::string& needle) {
        std::size_t n = 0, pos = 0;
        while ((pos = dot.find(needle, pos)) != std::string::npos) {
            ++n;
            pos += needle.size();
        }
        return n;
    };
    CHECK(count("label=\"ZM3\"") == 1);
    CHECK(count("label=\"FO\"") == 1);
    CHECK(count("label=\"ZP1\"") == 3);
}
