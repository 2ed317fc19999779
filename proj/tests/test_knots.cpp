#include <doctest.h>

#include "zipper/combinators.hpp"
#include "zipper/knots.hpp"
#include "zipper/moves.hpp"
#include "zipper/term.hpp"
#include "zipper/zg_io.hpp"

using namespace zipper;

TEST_CASE("a clicked (1)-zipper encodes as two opposite crossings") {
    TangleDiagram d = encode(parse_zg("Z 1 a c d x\n"));
    REQUIRE(d.crossings.size() == 2);
    CHECK(d.crossings[0].sign + d.crossings[1].sign == 0);
    CHECK(d.validate().empty());
    for (const auto& [aid, a] : d.arcs) CHECK_FALSE(a.is_virtual);
}

TEST_CASE("a lone minus half-zipper carries virtual closure arcs") {
    TangleDiagram d = encode(parse_zg("ZM 2 a out x y\n"));
    CHECK(d.crossings.size() == 2);
    std::size_t virtuals = 0;
    for (const auto& [aid, a] : d.arcs) virtuals += a.is_virtual ? 1 : 0;
    CHECK(virtuals == 2);
    CHECK(d.validate().empty());
}

TEST_CASE("encode rejects chemistry nodes") {
    CHECK_THROWS_AS(encode(compile(s_term())), UnsupportedNode);
    CHECK_THROWS_AS(encode(parse_zg("FO a b c\n")), UnsupportedNode);
    CHECK_NOTHROW(encode_extended(compile(s_term())));
}

TEST_CASE("realize_click turns the matched closure real without adding arcs") {
    ZGraph g = parse_zg("ZM 1 a f x\nZP 1 f c d\n");
    TangleDiagram d = encode(g);
    auto sites = click_sites(d);
    REQUIRE(sites.size() == 1);
    TangleDiagram realized = realize_click(d, sites.front());
    CHECK(realized.arcs.size() == d.arcs.size());
    CHECK(realized.crossings.size() == d.crossings.size());

    TangleDiagram clicked = encode(apply(g, enumerate_matches(g, MoveKind::Click).front()));
    CHECK(diagram_iso(realized, clicked));

    CHECK_THROWS_AS(realize_click(realized, sites.front()), BadSite);  // already real
    CHECK_THROWS_AS(realize_click(d, {}), BadSite);
}

TEST_CASE("unmatched closures are not click sites") {
    TangleDiagram d = encode(parse_zg("ZM 1 a out x\n"));
    CHECK(click_sites(d).empty());
}

TEST_CASE("apply_r2 removes exactly the two crossings") {
    TangleDiagram d = encode(parse_zg("Z 1 a c d x\n"));
    auto sites = r2_sites(d);
    REQUIRE(sites.size() == 1);
    TangleDiagram out = apply_r2(d, sites.front());
    CHECK(out.crossings.empty());
    CHECK(out.arcs.size() == 2);
    CHECK(out.validate().empty());
}

TEST_CASE("apply_r2 rejects same-sign pairs and empty diagrams") {
    TangleDiagram d = encode(parse_zg("ZM 1 a m x\nZM 1 m out y\n"));
    REQUIRE(d.crossings.size() == 2);
    CHECK_THROWS_AS(apply_r2(d, {0, 1}), BadSite);
    CHECK_THROWS_AS(apply_r2(TangleDiagram{}, {0, 1}), BadSite);
}

TEST_CASE("zip commutes with R2 through the encoding") {
    ZGraph g = parse_zg("Z 1 a c d x\n");
    TangleDiagram via_graph = encode(apply(g, enumerate_matches(g, MoveKind::Zip).front()));
    TangleDiagram d = encode(g);
    TangleDiagram via_diagram = apply_r2(d, r2_sites(d).front());
    CHECK(diagram_iso(via_graph, via_diagram));
}

TEST_CASE("diagram isomorphism ignores labels but not structure") {
    TangleDiagram d1 = encode(parse_zg("Z 1 a c d x\n"));
    TangleDiagram d2 = encode(parse_zg("Z 1 p q r s\n"));
    CHECK(diagram_iso(d1, d1));
    CHECK(diagram_iso(d1, d2));
    CHECK_FALSE(diagram_iso(d1, TangleDiagram{}));
    TangleDiagram bigger = encode(parse_zg("Z 2 a b c d e f\n"));
    CHECK_FALSE(diagram_iso(d1, bigger));
}

TEST_CASE("diagram serialization lists arcs and crossings") {
    TangleDiagram d = encode(parse_zg("Z 1 a c d x\n"));
    std::string text = emit_diagram(d);
    CHECK(text.find("ARC") != std::string::npos);
    CHECK(text.find("X -1") != std::string::npos);
    CHECK(text.find("X +1") != std::string::npos);
    CHECK(text.find("real") != std::string::npos);
}
