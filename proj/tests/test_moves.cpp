#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "zipper/isomorphism.hpp"
#include "zipper/moves.hpp"
#include "zipper/zg_io.hpp"

using namespace zipper;
using namespace zipper::testutil;

namespace {

ZGraph apply_only(const ZGraph& g, MoveKind kind, std::size_t which = 0) {
    auto ms = enumerate_matches(g, kind);
    REQUIRE(ms.size() > which);
    return apply(g, ms[which]);
}

}  // namespace

TEST_CASE("click on equal arities forms a zipper") {
    ZGraph g = parse_zg("ZM 1 a f x\nZP 1 f c d\n");
    ZGraph got = apply_only(g, MoveKind::Click);
    CHECK(validate(got).empty());
    CHECK(isomorphic(got, parse_zg("Z 1 a c d x\n")));
}

TEST_CASE("click with surplus arguments leaves a plus residual") {
    ZGraph g = parse_zg("ZM 1 a f x\nZP 2 f c1 c2 d\n");
    auto ms = enumerate_matches(g, MoveKind::Click);
    REQUIRE(ms.size() == 1);
    CHECK(ms.front().click_case == ClickCase::PlusResidual);
    ZGraph got = apply(g, ms.front());
    CHECK(isomorphic(got, parse_zg("Z 1 a c1 q x\nZP 1 q c2 d\n")));
}

TEST_CASE("click with surplus variables leaves a minus residual") {
    ZGraph g = parse_zg("ZM 2 a f x1 x2\nZP 1 f c d\n");
    auto ms = enumerate_matches(g, MoveKind::Click);
    REQUIRE(ms.size() == 1);
    CHECK(ms.front().click_case == ClickCase::MinusResidual);
    ZGraph got = apply(g, ms.front());
    CHECK(isomorphic(got, parse_zg("ZM 1 a q x2\nZ 1 q c d x1\n")));
}

TEST_CASE("there is no click without a plus half-zipper") {
    CHECK(enumerate_matches(parse_zg("ZM 1 x out x\n"), MoveKind::Click).empty());
}

TEST_CASE("zip fuses boundary arrows pairwise") {
    ZGraph g = parse_zg("Z 1 a c d x\n");
    ZGraph got = apply_only(g, MoveKind::Zip);
    CHECK(got.nodes().empty());
    CHECK(got.loop_count() == 0);
    REQUIRE(got.arrows().size() == 2);
    CHECK(has_free_arrow(got, "a", "d"));
    CHECK(has_free_arrow(got, "c", "x"));
}

TEST_CASE("zip follows fusion chains through the zipper") {
    // Port 1 heads back into port 0: the identity-redex core.
    ZGraph g = parse_zg("Z 1 p c d p\n");
    ZGraph got = apply_only(g, MoveKind::Zip);
    CHECK(got.nodes().empty());
    CHECK(got.loop_count() == 0);
    REQUIRE(got.arrows().size() == 1);
    CHECK(has_free_arrow(got, "c", "d"));
}

TEST_CASE("zip turns closed fusion cycles into loops") {
    ZGraph g = parse_zg("Z 1 s t s t\n");
    ZGraph got = apply_only(g, MoveKind::Zip);
    CHECK(got.nodes().empty());
    CHECK(got.arrows().empty());
    CHECK(got.loop_count() == 2);
}

TEST_CASE("tower merge stacks minus half-zippers with outer variables first") {
    ZGraph g = parse_zg("ZM 1 a m x\nZM 1 m out y\n");
    ZGraph got = apply_only(g, MoveKind::TowerMerge);
    CHECK(isomorphic(got, parse_zg("ZM 2 a out y x\n")));
}

TEST_CASE("tower merge stacks plus half-zippers with lower arguments first") {
    ZGraph g = parse_zg("ZP 2 f a1 a2 m\nZP 1 m b1 out\n");
    ZGraph got = apply_only(g, MoveKind::TowerMerge);
    CHECK(isomorphic(got, parse_zg("ZP 3 f a1 a2 b1 out\n")));
}

TEST_CASE("split then merge is the identity") {
    ZGraph g = parse_zg("ZM 3 a out x y z\n");
    auto splits = enumerate_matches(g, MoveKind::TowerSplit);
    REQUIRE(splits.size() == 2);  // points 1 and 2
    for (const auto& m : splits) {
        ZGraph mid = apply(g, m);
        CHECK(validate(mid).empty());
        ZGraph back = apply_only(mid, MoveKind::TowerMerge);
        CHECK(isomorphic(back, g));
    }
}

TEST_CASE("co-comm swaps the two fan-out arms and is an involution") {
    ZGraph g = parse_zg("FO a b c\n");
    ZGraph once = apply_only(g, MoveKind::CoComm);
    CHECK(free_ends(once) == free_ends(g));
    ZGraph twice = apply_only(once, MoveKind::CoComm);
    CHECK(emit_zg(twice) == emit_zg(g));

    // Swapping with one arm free still validates.
    ZGraph h = parse_zg("FO a b t\nT t\n");
    CHECK(validate(apply_only(h, MoveKind::CoComm)).empty());
}

TEST_CASE("co-assoc regroups and keeps the boundary") {
    ZGraph g = parse_zg("FO x m r\nFO m p q\n");
    auto ms = enumerate_matches(g, MoveKind::CoAssoc);
    REQUIRE(ms.size() == 1);
    ApplyResult r = apply_move(g, ms.front());
    CHECK(validate(r.graph).empty());
    CHECK(free_ends(r.graph) == free_ends(g));
    CHECK(enumerate_matches(r.graph, MoveKind::CoAssoc).empty());  // now right-leaning
    ZGraph back = apply(r.graph, r.inverse);
    CHECK(isomorphic(back, g));
    CHECK(free_ends(back) == free_ends(g));
}

TEST_CASE("fan-in against fan-out reconnects crosswise") {
    ZGraph g = parse_zg("FI a b c\nFO c d e\n");
    ZGraph got = apply_only(g, MoveKind::FanInCross);
    CHECK(got.nodes().empty());
    REQUIRE(got.arrows().size() == 2);
    CHECK(has_free_arrow(got, "a", "e"));
    CHECK(has_free_arrow(got, "b", "d"));
}

TEST_CASE("fan-in cycles close into two loops") {
    // Each arm feeds its own crosswise partner back.
    ZGraph g = parse_zg("FI p q c\nFO c q p\n");
    ZGraph got = apply_only(g, MoveKind::FanInCross);
    CHECK(got.nodes().empty());
    CHECK(got.arrows().empty());
    CHECK(got.loop_count() == 2);
}

TEST_CASE("dist over a plus half-zipper duplicates it behind fresh fan-outs") {
    ZGraph g = parse_zg("ZP 1 f c s\nFO s d e\n");
    ZGraph got = apply_only(g, MoveKind::DistPlus);
    CHECK(validate(got).empty());
    auto census = kind_census(got);
    CHECK(census["ZP1"] == 2);
    CHECK(census["FO"] == 2);  // one per in port
    CHECK(free_ends(got) == free_ends(g));
}

TEST_CASE("dist-plus makes one fresh fan-out per in port") {
    ZGraph g = parse_zg("ZP 2 f c1 c2 s\nFO s d e\n");
    ZGraph got = apply_only(g, MoveKind::DistPlus);
    CHECK(kind_census(got)["FO"] == 3);
    CHECK(kind_census(got)["ZP2"] == 2);
}

TEST_CASE("dist over a minus half-zipper uses a fan-in on the variable side") {
    ZGraph g = parse_zg("ZM 1 b s x\nFO s d e\n");
    ZGraph got = apply_only(g, MoveKind::DistMinus);
    CHECK(validate(got).empty());
    auto census = kind_census(got);
    CHECK(census["ZM1"] == 2);
    CHECK(census["FO"] == 1);
    CHECK(census["FI"] == 1);
    CHECK(free_ends(got) == free_ends(g));
}

TEST_CASE("pruning the identity graph leaves one loop") {
    ZGraph g = parse_zg("ZM 1 x f x\nT f\n");
    ZGraph got = apply_only(g, MoveKind::PruneZM);
    CHECK(got.nodes().empty());
    CHECK(got.arrows().empty());
    CHECK(got.loop_count() == 1);
}

TEST_CASE("pruning a plus half-zipper caps every in arrow") {
    ZGraph g = parse_zg("ZP 2 a0 a1 a2 t\nT t\n");
    ZGraph got = apply_only(g, MoveKind::PruneZP);
    CHECK(kind_census(got)["T"] == 3);
    CHECK(got.arrows().size() == 3);
    CHECK(free_ends(got) == free_ends(g));  // the three free tails survive
}

TEST_CASE("pruning one fan-out arm fuses the other through") {
    ZGraph g = parse_zg("FO a b t\nT t\n");
    ZGraph got = apply_only(g, MoveKind::PruneFO);
    CHECK(got.nodes().empty());
    REQUIRE(got.arrows().size() == 1);
    CHECK(has_free_arrow(got, "a", "b"));
}

TEST_CASE("pruning a fan-in caps both in arrows") {
    ZGraph g = parse_zg("FI a b t\nT t\n");
    ZGraph got = apply_only(g, MoveKind::PruneFI);
    CHECK(kind_census(got)["T"] == 2);
    CHECK(got.arrows().size() == 2);
}

TEST_CASE("a free-tailed arrow into termination becomes a loop") {
    ZGraph g = parse_zg("T t\n");
    ZGraph got = apply_only(g, MoveKind::PruneArrowT);
    CHECK(got.nodes().empty());
    CHECK(got.arrows().empty());
    CHECK(got.loop_count() == 1);
}

TEST_CASE("stale matches are rejected") {
    ZGraph g = parse_zg("ZM 1 a f x\nZP 1 f c d\n");
    auto ms = enumerate_matches(g, MoveKind::Click);
    ZGraph got = apply(g, ms.front());
    CHECK_THROWS_AS(apply(got, ms.front()), PatternMismatch);
}

TEST_CASE("matched patterns bind at most four nodes") {
    std::mt19937_64 rng(5);
    ZGraph pool[] = {parse_zg("ZM 2 a f x1 x2\nZP 3 f c1 c2 c3 d\n"),
                     parse_zg("Z 3 a b c d e f g h\n"),
                     parse_zg("ZP 2 f a1 a2 m\nZP 1 m b1 out\n"),
                     parse_zg("FI a b c\nFO c d e\nFO x y t\nT t\n")};
    for (const ZGraph& g : pool)
        for (MoveKind kind : all_move_kinds())
            for (const Match& m : enumerate_matches(g, kind)) CHECK(m.nodes.size() <= 4);
    (void)rng;
}

TEST_CASE("moves preserve the free-end boundary except the two pruning cases") {
    // PruneZM frees variable tails and PruneArrowT deletes a free-tailed
    // arrow; every other move keeps the boundary multiset intact.
    ZGraph cases[] = {
        parse_zg("ZM 2 a f x1 x2\nZP 1 f c d\n"),   // click, minus residual
        parse_zg("ZM 1 a f x\nZP 2 f c1 c2 d\n"),   // click, plus residual
        parse_zg("Z 2 a b c d e f\n"),          // zip
        parse_zg("ZP 1 f a m\nZP 2 m b1 b2 out\n"), // tower merge
        parse_zg("ZM 3 a out x y z\n"),             // tower split
        parse_zg("FO a b c\n"),                     // cocomm
        parse_zg("FO x m r\nFO m p q\n"),           // coassoc
        parse_zg("FI a b c\nFO c d e\n"),           // fanin
        parse_zg("ZP 1 f c s\nFO s d e\n"),         // dist+
        parse_zg("ZM 2 b s x y\nFO s d e\n"),       // dist-
        parse_zg("ZP 1 a0 a1 t\nT t\n"),            // prune-zp
        parse_zg("FO a b t\nT t\n"),                // prune-fo
        parse_zg("FI a b t\nT t\n"),                // prune-fi
    };
    for (const ZGraph& g : cases)
        for (MoveKind kind : all_move_kinds())
            for (const Match& m : enumerate_matches(g, kind)) {
                ZGraph out = apply(g, m);
                CHECK(validate(out).empty());
                CHECK(free_ends(out) == free_ends(g));
            }
}

TEST_CASE("reverse of apply restores the input graph") {
    ZGraph cases[] = {
        parse_zg("ZM 1 a f x\nZP 1 f c d\n"),
        parse_zg("ZM 1 a f x\nZP 3 f c1 c2 c3 d\n"),
        parse_zg("ZM 3 a f x y z\nZP 1 f c d\n"),
        parse_zg("Z 2 a b c d e f\n"),
        parse_zg("Z 1 p c d p\n"),
        parse_zg("Z 1 s t s t\n"),
        parse_zg("ZP 2 f a1 a2 m\nZP 1 m b1 out\n"),
        parse_zg("ZM 1 a m x\nZM 2 m out y z\n"),
        parse_zg("FO a b c\n"),
        parse_zg("FO x m r\nFO m p q\n"),
        parse_zg("FI a b c\nFO c d e\n"),
        parse_zg("FI p q c\nFO c q p\n"),
        parse_zg("ZP 2 f c1 c2 s\nFO s d e\n"),
        parse_zg("ZM 2 b s x y\nFO s d e\n"),
        parse_zg("ZP 1 a0 a1 t\nT t\n"),
        parse_zg("ZM 1 x f x\nT f\n"),
        parse_zg("ZM 2 a f x y\nT f\n"),
        parse_zg("FO a b t\nT t\n"),
        parse_zg("FI a b t\nT t\n"),
        parse_zg("T t\n"),
    };
    for (const ZGraph& g : cases)
        for (MoveKind kind : all_move_kinds())
            for (const Match& m : enumerate_matches(g, kind)) {
                ApplyResult fwd = apply_move(g, m);
                ZGraph back = reverse(fwd.graph, fwd.inverse);
                CHECK(isomorphic(back, g));
            }
}

TEST_CASE("un-click reverse matches are enumerable on zippers") {
    ZGraph g = parse_zg("ZM 1 a f x\nZP 2 f c1 c2 d\n");
    ZGraph clicked = apply_only(g, MoveKind::Click);
    auto rev = enumerate_reverse_matches(clicked, MoveKind::Click);
    // The zipper alone plus the zipper-with-residual variant.
    CHECK(rev.size() == 2);
    bool found = false;
    for (const Match& m : rev)
        if (m.click_case == ClickCase::PlusResidual) {
            CHECK(isomorphic(reverse(clicked, m), g));
            found = true;
        }
    CHECK(found);
}
