#include "zipper/suites.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "zipper/combinators.hpp"
#include "zipper/engine.hpp"
#include "zipper/knots.hpp"
#include "zipper/moves.hpp"
#include "zipper/term.hpp"

namespace zipper {

bool SuiteResult::all_passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

namespace {

// --- shared term pools ----------------------------------------------------

std::vector<Term> designated_pool() {
    return {s_term(),
            k_term(),
            i_term(),
            app(s_term(), k_term()),
            app(k_term(), i_term()),
            app(k_term(), app(i_term(), i_term()))};
}

std::vector<Term> normalizing_terms(std::mt19937_64& rng, int count, int max_size, int fuel) {
    std::vector<Term> out;
    while (static_cast<int>(out.size()) < count) {
        Term t = random_term(rng, max_size);
        if (!oracle_nf(t, fuel).fuel_exhausted) out.push_back(t);
    }
    return out;
}

std::string term_str(const Term& t) { return to_string(t); }

bool graph_equals_term(const ZGraph& reduced, const Term& expect, std::string& why) {
    Readback rb = readback(reduced);
    if (!rb.term) {
        why = "readback failed: " + rb.reason;
        return false;
    }
    if (!term_eq(*rb.term, expect)) {
        why = "got " + term_str(*rb.term) + ", expected " + term_str(expect);
        return false;
    }
    return true;
}

// --- random graphs for the reversibility and serialization suites ---------

struct Rng {
    std::mt19937_64& r;
    std::uint64_t operator()(std::uint64_t n) { return r() % n; }
    bool chance(double p) { return (r() % 1000) < static_cast<std::uint64_t>(p * 1000); }
};

void add_junk(ZGraph& g, Rng& rng) {
    if (rng.chance(0.4)) g.add_loops(1);
    if (rng.chance(0.3))
        g.add_arrow(FreeEnd{g.fresh_label("j")}, FreeEnd{g.fresh_label("j")});
}

// Fill every unused port of `n` with a free-ended arrow.
void close_ports(ZGraph& g, NodeId n) {
    PortIndex idx(g);
    for (Port p : ports_of(g.kind(n))) {
        if (idx.at(n, p)) continue;
        if (is_out_port(p))
            g.add_arrow(Endpoint{PortRef{n, p}}, Endpoint{FreeEnd{g.fresh_label("f")}});
        else
            g.add_arrow(Endpoint{FreeEnd{g.fresh_label("f")}}, Endpoint{PortRef{n, p}});
    }
}

ZGraph random_pattern_graph(MoveKind kind, std::mt19937_64& r) {
    Rng rng{r};
    ZGraph g;
    auto arity = [&]() { return static_cast<std::uint32_t>(1 + rng(3)); };
    switch (kind) {
        case MoveKind::Click: {
            NodeId m = g.add_node(zm(arity()));
            NodeId p = g.add_node(zp(arity()));
            g.add_arrow(PortRef{m, out0()}, PortRef{p, in0()});
            close_ports(g, m);
            close_ports(g, p);
            break;
        }
        case MoveKind::Zip: {
            std::uint32_t n = arity();
            NodeId z = g.add_node(zipper_node(n));
            std::vector<Port> ins{in0()}, outs{out0()};
            for (std::uint32_t i = 1; i <= n; ++i) {
                ins.push_back(arg(i));
                outs.push_back(var(i));
            }
            // Self wirings exercise fusion cycles.
            for (Port o : outs) {
                if (!ins.empty() && rng.chance(0.45)) {
                    std::size_t k = rng(ins.size());
                    g.add_arrow(PortRef{z, o}, PortRef{z, ins[k]});
                    ins.erase(ins.begin() + static_cast<long>(k));
                }
            }
            close_ports(g, z);
            break;
        }
        case MoveKind::TowerMerge: {
            bool minus = rng.chance(0.5);
            NodeId a = g.add_node(minus ? zm(arity()) : zp(arity()));
            NodeId b = g.add_node(minus ? zm(arity()) : zp(arity()));
            g.add_arrow(PortRef{a, out0()}, PortRef{b, in0()});
            close_ports(g, a);
            close_ports(g, b);
            break;
        }
        case MoveKind::TowerSplit: {
            bool minus = rng.chance(0.5);
            std::uint32_t n = static_cast<std::uint32_t>(2 + rng(3));
            NodeId a = g.add_node(minus ? zm(n) : zp(n));
            close_ports(g, a);
            break;
        }
        case MoveKind::CoComm: {
            NodeId f = g.add_node(fan_out());
            if (rng.chance(0.3)) g.add_arrow(PortRef{f, var(1)}, PortRef{f, in0()});
            close_ports(g, f);
            break;
        }
        case MoveKind::CoAssoc: {
            NodeId a = g.add_node(fan_out());
            NodeId b = g.add_node(fan_out());
            g.add_arrow(PortRef{a, var(1)}, PortRef{b, in0()});
            close_ports(g, a);
            close_ports(g, b);
            break;
        }
        case MoveKind::FanInCross: {
            NodeId f = g.add_node(fan_in());
            NodeId o = g.add_node(fan_out());
            g.add_arrow(PortRef{f, out0()}, PortRef{o, in0()});
            if (rng.chance(0.35)) g.add_arrow(PortRef{o, var(1)}, PortRef{f, arg(1)});
            if (rng.chance(0.35)) {
                PortIndex idx(g);
                if (!idx.at(o, var(2)) && !idx.at(f, arg(2)))
                    g.add_arrow(PortRef{o, var(2)}, PortRef{f, arg(2)});
            }
            close_ports(g, f);
            close_ports(g, o);
            break;
        }
        case MoveKind::DistPlus:
        case MoveKind::DistMinus: {
            std::uint32_t n = arity();
            NodeId node = g.add_node(kind == MoveKind::DistPlus ? zp(n) : zm(n));
            NodeId fo = g.add_node(fan_out());
            g.add_arrow(PortRef{node, out0()}, PortRef{fo, in0()});
            if (kind == MoveKind::DistMinus && rng.chance(0.35))
                g.add_arrow(PortRef{node, var(1 + static_cast<std::uint32_t>(rng(n)))},
                            PortRef{node, in0()});
            close_ports(g, node);
            close_ports(g, fo);
            break;
        }
        case MoveKind::PruneZP: {
            NodeId z = g.add_node(zp(arity()));
            NodeId t = g.add_node(termination());
            g.add_arrow(PortRef{z, out0()}, PortRef{t, in0()});
            close_ports(g, z);
            break;
        }
        case MoveKind::PruneZM: {
            std::uint32_t n = arity();
            NodeId m = g.add_node(zm(n));
            NodeId t = g.add_node(termination());
            g.add_arrow(PortRef{m, out0()}, PortRef{t, in0()});
            if (rng.chance(0.45))
                g.add_arrow(PortRef{m, var(1 + static_cast<std::uint32_t>(rng(n)))},
                            PortRef{m, in0()});
            close_ports(g, m);
            break;
        }
        case MoveKind::PruneFO: {
            NodeId f = g.add_node(fan_out());
            NodeId t = g.add_node(termination());
            std::uint32_t k = 1 + static_cast<std::uint32_t>(rng(2));
            g.add_arrow(PortRef{f, var(k)}, PortRef{t, in0()});
            if (rng.chance(0.35)) g.add_arrow(PortRef{f, var(3 - k)}, PortRef{f, in0()});
            close_ports(g, f);
            break;
        }
        case MoveKind::PruneFI: {
            NodeId f = g.add_node(fan_in());
            NodeId t = g.add_node(termination());
            g.add_arrow(PortRef{f, out0()}, PortRef{t, in0()});
            close_ports(g, f);
            break;
        }
        case MoveKind::PruneArrowT: {
            NodeId t = g.add_node(termination());
            g.add_arrow(FreeEnd{g.fresh_label("f")}, PortRef{t, in0()});
            break;
        }
    }
    add_junk(g, rng);
    return g;
}

// --- individual suites ------------------------------------------------------

SuiteResult theorem_a(std::uint64_t seed) {
    SuiteResult res{"theorem-a", {}};
    std::mt19937_64 rng(seed);
    std::vector<Term> pool = designated_pool();
    for (Term& t : normalizing_terms(rng, 50, 8, 200)) pool.push_back(std::move(t));
    for (const Term& a : pool) {
        NormalForm nf = oracle_nf(a, 200);
        Trace tr = reduce(compile(app(i_term(), a)), default_strategy());
        std::string why;
        bool ok = tr.status == ReduceStatus::NormalForm && graph_equals_term(tr.final, nf.term, why);
        res.cases.push_back({"I (" + term_str(a) + ")", ok, ok ? "" : why});
    }
    return res;
}

SuiteResult theorem_b(std::uint64_t seed) {
    SuiteResult res{"theorem-b", {}};
    std::mt19937_64 rng(seed + 1);
    std::vector<std::pair<Term, Term>> pairs;
    for (const Term& a : designated_pool())
        for (const Term& b : designated_pool()) pairs.emplace_back(a, b);
    auto pool = normalizing_terms(rng, 100, 8, 200);
    for (int i = 0; i < 50; ++i) pairs.emplace_back(pool[2 * i], pool[2 * i + 1]);
    for (const auto& [a, b] : pairs) {
        NormalForm nf = oracle_nf(a, 200);
        Trace tr = reduce(compile(app(app(k_term(), a), b)), default_strategy());
        std::string why;
        bool ok = tr.status == ReduceStatus::NormalForm && graph_equals_term(tr.final, nf.term, why);
        res.cases.push_back({"(K " + term_str(a) + ") (" + term_str(b) + ")", ok,
                             ok ? "loops " + std::to_string(tr.final.loop_count()) : why});
    }
    return res;
}

SuiteResult theorem_c(std::uint64_t) {
    SuiteResult res{"theorem-c", {}};
    std::vector<Term> pool{s_term(), k_term(), i_term(), app(s_term(), k_term())};
    for (const Term& a : pool)
        for (const Term& b : pool)
            for (const Term& c : pool) {
                Term lhs = app(app(app(s_term(), a), b), c);
                Term rhs = app(app(a, c), app(b, c));
                Trace tl = reduce(compile(lhs), default_strategy());
                Trace tr = reduce(compile(rhs), default_strategy());
                LoopCompare cmp = equal_mod_loops(tl.final, tr.final);
                bool ok = tl.status == ReduceStatus::NormalForm &&
                          tr.status == ReduceStatus::NormalForm && cmp.equal;
                res.cases.push_back({"S " + term_str(a) + " " + term_str(b) + " " + term_str(c), ok,
                                     ok ? "" : "sides disagree"});
            }
    return res;
}

SuiteResult theorem_d(std::uint64_t seed) {
    SuiteResult res{"theorem-d", {}};
    Term skk = app(app(s_term(), k_term()), k_term());
    Trace tr = reduce(compile(skk), default_strategy());
    ZGraph ig = compile(i_term());
    LoopCompare direct = equal_mod_loops(tr.final, ig);
    bool ok = direct.equal;
    std::string detail = "direct normal form";
    if (!ok) {
        auto path = search_path(tr.final, ig, 12);
        ok = path.has_value();
        detail = ok ? "via search, " + std::to_string(path->size()) + " moves" : "no path found";
    }
    res.cases.push_back({"(S K) K = I", ok, detail});

    std::mt19937_64 rng(seed + 2);
    for (const Term& p : normalizing_terms(rng, 20, 8, 200)) {
        NormalForm nf = oracle_nf(p, 500);
        Trace t = reduce(compile(app(skk, p)), default_strategy());
        std::string why;
        bool case_ok = t.status == ReduceStatus::NormalForm && graph_equals_term(t.final, nf.term, why);
        res.cases.push_back({"S K K (" + term_str(p) + ")", case_ok, case_ok ? "" : why});
    }
    return res;
}

SuiteResult multiplier_suite(std::uint64_t) {
    SuiteResult res{"multiplier", {}};
    std::vector<Term> pool{s_term(),
                           k_term(),
                           i_term(),
                           app(s_term(), k_term()),
                           app(k_term(), i_term()),
                           app(s_term(), app(k_term(), i_term()))};
    // The lemma's statement set, ordered as I, K, S first.
    std::swap(pool[0], pool[2]);
    for (const Term& a : pool) {
        MultiplyResult r = multiply(compile(a));
        res.cases.push_back({"multiply " + term_str(a), r.success,
                             r.success ? std::to_string(r.trace.steps.size()) + " moves"
                                       : "did not split into two copies"});
    }
    return res;
}

SuiteResult death_suite(std::uint64_t seed) {
    SuiteResult res{"death", {}};
    const std::pair<Term, std::uint32_t> named[] = {
        {i_term(), 1}, {k_term(), 2}, {s_term(), 3}};
    for (const auto& [t, want] : named) {
        KillResult r = kill(compile(t));
        bool ok = r.success && r.loops == want;
        res.cases.push_back({"kill " + term_str(t), ok,
                             "loops " + std::to_string(r.loops) + ", want " + std::to_string(want)});
    }
    std::mt19937_64 rng(seed + 3);
    for (int i = 0; i < 50; ++i) {
        Term t = random_term(rng, 10);
        KillResult r = kill(compile(t));
        res.cases.push_back({"kill " + term_str(t), r.success,
                             r.success ? std::to_string(r.loops) + " loops" : "residue left"});
    }
    return res;
}

SuiteResult beta_suite(std::uint64_t) {
    SuiteResult res{"beta", {}};
    ZGraph g = parse_zg("ZM 1 a f x\nZP 1 f c d\n");
    auto clicks = enumerate_matches(g, MoveKind::Click);
    bool ok = clicks.size() == 1;
    ZGraph g2 = ok ? apply(g, clicks.front()) : g;
    auto zips = ok ? enumerate_matches(g2, MoveKind::Zip) : std::vector<Match>{};
    ok = ok && zips.size() == 1;
    ZGraph g3 = ok ? apply(g2, zips.front()) : g2;
    // Exactly the beta rewiring: body tail a to result head d, argument tail c
    // to variable head x.
    auto has_arrow = [&](const std::string& from, const std::string& to) {
        for (const auto& [aid, ar] : g3.arrows())
            if (is_free(ar.tail) && is_free(ar.head) && std::get<FreeEnd>(ar.tail).label == from &&
                std::get<FreeEnd>(ar.head).label == to)
                return true;
        return false;
    };
    ok = ok && g3.nodes().empty() && g3.arrows().size() == 2 && g3.loop_count() == 0 &&
         has_arrow("a", "d") && has_arrow("c", "x");
    res.cases.push_back({"click;zip on the 4-ended redex is the beta rewiring", ok, ""});
    return res;
}

SuiteResult reversibility_suite(std::uint64_t seed) {
    SuiteResult res{"reversibility", {}};
    std::mt19937_64 rng(seed + 4);
    for (MoveKind kind : all_move_kinds()) {
        int ok_count = 0, trials = 0;
        std::string first_failure;
        while (trials < 100) {
            ZGraph g = random_pattern_graph(kind, rng);
            auto ms = enumerate_matches(g, kind);
            if (ms.empty()) {
                first_failure = "no match generated";
                break;
            }
            const Match& m = ms[rng() % ms.size()];
            ++trials;
            try {
                ApplyResult fwd = apply_move(g, m);
                ApplyResult back = apply_move(fwd.graph, fwd.inverse);
                if (isomorphic(back.graph, g) && validate(fwd.graph).empty())
                    ++ok_count;
                else if (first_failure.empty())
                    first_failure = "round trip not isomorphic (" + m.summary() + ")";
            } catch (const std::exception& e) {
                if (first_failure.empty()) first_failure = e.what();
            }
        }
        bool ok = ok_count == 100;
        res.cases.push_back({std::string(move_name(kind)) + " x100", ok,
                             ok ? "" : first_failure});
    }
    return res;
}

SuiteResult oracle_fuzz_suite(std::uint64_t seed) {
    SuiteResult res{"oracle-fuzz", {}};
    std::mt19937_64 rng(seed + 5);
    int done = 0, attempts = 0;
    while (done < 200 && attempts < 5000) {
        ++attempts;
        Term t = random_term(rng, 12);
        NormalForm nf = oracle_nf(t, 500);
        if (nf.fuel_exhausted) continue;
        ++done;
        Trace tr = reduce(compile(t), default_strategy());
        std::string why;
        bool ok = tr.status == ReduceStatus::NormalForm && graph_equals_term(tr.final, nf.term, why);
        res.cases.push_back({term_str(t), ok, ok ? "" : why});
    }
    if (done < 200) res.cases.push_back({"sample size", false, "could not draw 200 normalizing terms"});
    return res;
}

SuiteResult knots_suite(std::uint64_t) {
    SuiteResult res{"knots", {}};
    {
        ZGraph g = parse_zg("Z 1 a c d x\n");
        TangleDiagram d = encode(g);
        auto zips = enumerate_matches(g, MoveKind::Zip);
        TangleDiagram via_graph = encode(apply(g, zips.front()));
        auto sites = r2_sites(d);
        bool ok = sites.size() == 1;
        if (ok) {
            TangleDiagram via_diagram = apply_r2(d, sites.front());
            ok = diagram_iso(via_graph, via_diagram) &&
                 via_diagram.crossings.size() + 2 == d.crossings.size();
        }
        res.cases.push_back({"encode after zip matches R2 after encode", ok, ""});
    }
    {
        ZGraph g = parse_zg("ZM 1 a f x\nZP 1 f c d\n");
        TangleDiagram d = encode(g);
        auto sites = click_sites(d);
        bool ok = sites.size() == 1;
        if (ok) {
            TangleDiagram realized = realize_click(d, sites.front());
            TangleDiagram clicked = encode(apply(g, enumerate_matches(g, MoveKind::Click).front()));
            ok = diagram_iso(realized, clicked) && realized.arcs.size() == d.arcs.size();
        }
        res.cases.push_back({"realize-click commutes with encode", ok, ""});
    }
    return res;
}

SuiteResult serialization_suite(std::uint64_t seed) {
    SuiteResult res{"serialization", {}};
    std::mt19937_64 rng(seed + 6);
    std::vector<ZGraph> corpus;
    for (int i = 0; i < 12; ++i) corpus.push_back(compile(random_term(rng, 8)));
    for (MoveKind kind : all_move_kinds())
        for (int i = 0; i < 2; ++i) corpus.push_back(random_pattern_graph(kind, rng));
    {
        ZGraph g;
        g.add_loops(3);
        g.add_arrow(FreeEnd{"a"}, FreeEnd{"b"});
        corpus.push_back(std::move(g));
    }
    while (corpus.size() < 50) corpus.push_back(compile(random_term(rng, 5)));
    int idx = 0;
    for (const ZGraph& g : corpus) {
        ++idx;
        bool ok = false;
        std::string why;
        try {
            ZGraph back = parse_zg(emit_zg(g));
            ok = isomorphic(back, g);
            if (!ok) why = "round trip not isomorphic";
        } catch (const std::exception& e) {
            why = e.what();
        }
        res.cases.push_back({"corpus graph " + std::to_string(idx), ok, why});
    }
    return res;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"theorem-a", "theorem-b", "theorem-c",     "theorem-d",   "multiplier", "death",
            "beta",      "reversibility", "oracle-fuzz", "knots",      "serialization"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "theorem-a") return theorem_a(seed);
    if (name == "theorem-b") return theorem_b(seed);
    if (name == "theorem-c") return theorem_c(seed);
    if (name == "theorem-d") return theorem_d(seed);
    if (name == "multiplier") return multiplier_suite(seed);
    if (name == "death") return death_suite(seed);
    if (name == "beta") return beta_suite(seed);
    if (name == "reversibility") return reversibility_suite(seed);
    if (name == "oracle-fuzz" || name == "fuzz") return oracle_fuzz_suite(seed);
    if (name == "knots") return knots_suite(seed);
    if (name == "serialization") return serialization_suite(seed);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace zipper
