#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "zipper/combinators.hpp"
#include "zipper/engine.hpp"
#include "zipper/term.hpp"

using namespace zipper;

TEST_CASE("reduce I I to the identity graph") {
    Trace tr = reduce(compile(parse_term("I I")), default_strategy());
    CHECK(tr.status == ReduceStatus::NormalForm);
    CHECK(isomorphic(tr.final, compile(i_term())));
}

TEST_CASE("reduce K I (K I) to I modulo loops") {
    Trace tr = reduce(compile(parse_term("K I (K I)")), default_strategy());
    CHECK(tr.status == ReduceStatus::NormalForm);
    CHECK(equal_mod_loops(tr.final, compile(i_term())).equal);
}

TEST_CASE("the empty graph is already a normal form") {
    Trace tr = reduce(ZGraph{}, default_strategy());
    CHECK(tr.steps.empty());
    CHECK(tr.status == ReduceStatus::NormalForm);
}

TEST_CASE("partial applications stay term-shaped under the default strategy") {
    for (const char* s : {"S K", "K I", "S (K I)"}) {
        Trace tr = reduce(compile(parse_term(s)), default_strategy());
        Readback rb = readback(tr.final);
        REQUIRE(rb.term.has_value());
        CHECK(term_eq(*rb.term, oracle_nf(parse_term(s), 100).term));
    }
}

TEST_CASE("equal_mod_loops compares stripped graphs and reports the difference") {
    ZGraph i2 = compile(i_term());
    i2.add_loops(2);
    LoopCompare c = equal_mod_loops(i2, compile(i_term()));
    CHECK(c.equal);
    CHECK(c.loop_difference == 2);
    CHECK_FALSE(equal_mod_loops(compile(i_term()), compile(k_term())).equal);
}

TEST_CASE("search_path finds the empty sequence on equal graphs") {
    auto path = search_path(compile(k_term()), compile(k_term()), 3);
    REQUIRE(path.has_value());
    CHECK(path->empty());
}

TEST_CASE("search_path finds click then zip for I I") {
    auto path = search_path(compile(parse_term("I I")), compile(i_term()), 4);
    REQUIRE(path.has_value());
    REQUIRE(path->size() == 2);
    CHECK((*path)[0].kind == MoveKind::Click);
    CHECK((*path)[1].kind == MoveKind::Zip);
}

TEST_CASE("search_path gives up within the bound on unrelated graphs") {
    CHECK_FALSE(search_path(compile(k_term()), compile(s_term()), 2).has_value());
}

TEST_CASE("multiply splits small combinators into two copies") {
    for (const char* s : {"I", "K", "S K"}) {
        ZGraph a = compile(parse_term(s));
        MultiplyResult r = multiply(a);
        CHECK(r.success);
        auto comps = components(strip_loops(r.graph).first);
        REQUIRE(comps.size() == 2);
        for (const auto& c : comps) CHECK(isomorphic(c, a, {true}));
    }
}

TEST_CASE("multiply handles the fan-out inside S") {
    MultiplyResult r = multiply(compile(s_term()));
    CHECK(r.success);
}

TEST_CASE("kill reduces I, K, S to the counted loops") {
    CHECK(kill(compile(i_term())).loops == 1);
    CHECK(kill(compile(k_term())).loops == 2);
    CHECK(kill(compile(s_term())).loops == 3);
    CHECK(kill(compile(s_term())).success);
}

TEST_CASE("trace replay reproduces the final graph exactly") {
    ZGraph g = compile(parse_term("S K K I"));
    Trace tr = reduce(g, default_strategy());
    CHECK(tr.status == ReduceStatus::NormalForm);
    ZGraph again = replay_trace(g, tr);
    CHECK(fast_digest(again) == fast_digest(tr.final));
    CHECK(emit_zg(again) == emit_zg(tr.final));
}

TEST_CASE("trace log carries one line per step plus the status") {
    ZGraph g = compile(parse_term("I I"));
    Trace tr = reduce(g, default_strategy());
    std::string log = format_trace(tr);
    CHECK(log.find("click") != std::string::npos);
    CHECK(log.find("zip") != std::string::npos);
    CHECK(log.find("normal-form") != std::string::npos);
}

TEST_CASE("normal forms have no matches under the strategy's own selection") {
    Strategy s = default_strategy();
    Trace tr = reduce(compile(parse_term("S K K")), s);
    REQUIRE(tr.status == ReduceStatus::NormalForm);
    for (MoveKind kind : s.priority) {
        auto ms = enumerate_matches(tr.final, kind);
        if (kind == MoveKind::Click)
            std::erase_if(ms, [](const Match& m) { return m.click_case == ClickCase::MinusResidual; });
        CHECK(ms.empty());
    }

    Strategy unsat = default_strategy();
    unsat.saturated_click = false;
    Trace tu = reduce(compile(parse_term("K I")), unsat);
    REQUIRE(tu.status == ReduceStatus::NormalForm);
    for (MoveKind kind : unsat.priority) CHECK(enumerate_matches(tu.final, kind).empty());
}

TEST_CASE("step limits are reported") {
    Strategy s = default_strategy();
    s.max_steps = 1;
    Trace tr = reduce(compile(parse_term("S K K I")), s);
    CHECK(tr.status == ReduceStatus::StepLimit);
}

TEST_CASE("first-match and random tie-breaking agree on normalizing terms") {
    std::mt19937_64 rng(41);
    int checked = 0;
    while (checked < 25) {
        Term t = random_term(rng, 10);
        NormalForm nf = oracle_nf(t, 300);
        if (nf.fuel_exhausted) continue;
        ++checked;
        Strategy rnd = default_strategy();
        rnd.tie_break = TieBreak::Random;
        rnd.seed = rng();
        Readback a = readback(reduce(compile(t), default_strategy()).final);
        Readback b = readback(reduce(compile(t), rnd).final);
        REQUIRE(a.term.has_value());
        REQUIRE(b.term.has_value());
        CHECK(term_eq(*a.term, *b.term));
        CHECK(term_eq(*a.term, nf.term));
    }
}
