#include "zipper/engine.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace zipper {

Strategy default_strategy() {
    Strategy s;
    // Garbage collection first, then tower merges so that saturated head
    // redexes become visible before argument-side work, then beta, then
    // duplication.
    s.priority = {MoveKind::PruneZP, MoveKind::PruneZM,   MoveKind::PruneFO,  MoveKind::PruneFI,
                  MoveKind::PruneArrowT, MoveKind::TowerMerge, MoveKind::Click, MoveKind::Zip,
                  MoveKind::DistPlus, MoveKind::DistMinus, MoveKind::FanInCross};
    return s;
}

Strategy multiply_strategy() {
    Strategy s;
    s.priority = {MoveKind::DistPlus, MoveKind::DistMinus, MoveKind::FanInCross,
                  MoveKind::PruneFI,  MoveKind::PruneFO,   MoveKind::PruneArrowT};
    return s;
}

Strategy kill_strategy() {
    Strategy s;
    s.priority = {MoveKind::PruneZP, MoveKind::PruneFO, MoveKind::PruneFI, MoveKind::PruneZM,
                  MoveKind::PruneArrowT, MoveKind::Click, MoveKind::Zip, MoveKind::DistPlus,
                  MoveKind::DistMinus};
    s.saturated_click = false;
    return s;
}

namespace {

// --- untangling shared fan-out trees ------------------------------------
//
// Duplicating a graph that contains its own fan-out stalls in the shape
//
//     fan-in F -> G(A(a1,a2), B(b1,b2))
//
// where G belonged to the duplicated material and A, B are the fresh
// splitters whose first arms feed copy 1 and second arms feed copy 2.
// Annihilating F against G directly would hand each copy's variable a
// whole splitter. Regrouping to G'(L(a1,b1), R(a2,b2)) first makes the
// crosswise fan-in reconnect copy 1 to L and copy 2 to R, giving each copy
// its own fan-out. The fixed co-assoc/co-comm script below performs
// ((0,1),(2,3)) -> ((0,2),(1,3)).
struct TreeMove {
    enum class Op { CoComm, AssocFwd, AssocRev } op;
    std::vector<int> path;  // 0 = first arm, 1 = second arm
};

const std::vector<TreeMove>& untangle_script() {
    static const std::vector<TreeMove> script = {
        {TreeMove::Op::CoComm, {0}}, {TreeMove::Op::AssocFwd, {}}, {TreeMove::Op::AssocRev, {1}},
        {TreeMove::Op::CoComm, {}},  {TreeMove::Op::AssocFwd, {}}, {TreeMove::Op::CoComm, {1}},
    };
    return script;
}

// Follow out arrows inside `allowed` from `root`; returns the fan-out node a
// path leads to, if the whole path stays internal.
std::optional<NodeId> tree_node_at(const ZGraph& g, NodeId root, const std::set<NodeId>& allowed,
                                   const std::vector<int>& path) {
    PortIndex idx(g);
    NodeId cur = root;
    for (int step : path) {
        auto aid = idx.at(cur, var(step == 0 ? 1 : 2));
        if (!aid) return std::nullopt;
        const Arrow& a = g.arrow(*aid);
        if (is_free(a.head)) return std::nullopt;
        PortRef h = port_ref(a.head);
        if (!allowed.count(h.node) || !(h.port == in0())) return std::nullopt;
        cur = h.node;
    }
    return cur;
}

struct Engine {
    const Strategy& strat;
    std::mt19937_64 rng;
    ZGraph g;
    Trace trace;
    int steps = 0;
    // Branch fan-outs created by dist steps. Fan-ins meeting these are the
    // convention-aligned front closures and may fire ahead of further
    // distribution; node ids are never reused, so stale entries are harmless.
    std::set<NodeId> fresh_fos;

    Engine(const ZGraph& g0, const Strategy& s) : strat(s), rng(s.seed), g(g0) {
        trace.fp_initial = fast_digest(g0);
    }

    bool budget_left() const { return steps < strat.max_steps; }

    void record(const Match& applied, ZGraph&& next) {
        g = std::move(next);
        trace.steps.push_back({applied, applied.summary(), fast_digest(g)});
        ++steps;
    }

    bool apply_match(const Match& m) {
        ApplyResult r = apply_move(g, m);
        if (!m.reversed && (m.kind == MoveKind::DistPlus || m.kind == MoveKind::DistMinus)) {
            for (const auto& [role, id] : r.inverse.nodes)
                if (role.rfind("branch", 0) == 0 && r.graph.has_node(id) &&
                    r.graph.kind(id).kind == Kind::FanOut)
                    fresh_fos.insert(id);
        }
        record(m, std::move(r.graph));
        return true;
    }

    const Match& pick(const std::vector<Match>& ms) {
        if (strat.tie_break == TieBreak::FirstMatch || ms.size() == 1) return ms.front();
        return ms[rng() % ms.size()];
    }

    // A fan-in match is direct when the fan-out's arms end on ordinary ports;
    // arms running into further fan-outs mark a shared tree.
    bool is_stuck(const Match& m) const {
        PortIndex idx(g);
        NodeId G = m.node("fanout");
        for (std::uint32_t i = 1; i <= 2; ++i) {
            auto aid = idx.at(G, var(i));
            if (!aid) continue;
            const Arrow& a = g.arrow(*aid);
            if (!is_free(a.head) && port_ref(a.head).port == in0() &&
                g.kind(port_ref(a.head).node).kind == Kind::FanOut)
                return true;
        }
        return false;
    }

    // Pruning a (-n) node frees its variable tails. While a variable still
    // feeds a pending fan-in merge, hold the prune back so the duplication
    // front can finish first; a freed tail into a live fan-in would be
    // unremovable debris.
    bool feeds_fanin(const Match& m) const {
        PortIndex idx(g);
        NodeId node = m.node("node");
        NodeKind k = g.kind(node);
        for (std::uint32_t i = 1; i <= k.arity; ++i) {
            auto aid = idx.at(node, var(i));
            if (!aid) continue;
            const Arrow& a = g.arrow(*aid);
            if (!is_free(a.head) && g.kind(port_ref(a.head).node).kind == Kind::FanIn)
                return true;
        }
        return false;
    }

    bool try_untangle(const Match& m) {
        PortIndex idx(g);
        NodeId F = m.node("fanin");
        NodeId G = m.node("fanout");
        // The regroup re-purposes these nodes as the copies' own fan-outs;
        // they stop being convention-aligned splitters.
        fresh_fos.erase(G);
        std::set<NodeId> allowed{G};
        std::array<NodeId, 2> kids{};
        for (std::uint32_t i = 1; i <= 2; ++i) {
            auto aid = idx.at(G, var(i));
            if (!aid) return false;
            const Arrow& a = g.arrow(*aid);
            if (is_free(a.head)) return false;
            PortRef h = port_ref(a.head);
            if (!(h.port == in0()) || g.kind(h.node).kind != Kind::FanOut) return false;
            kids[i - 1] = h.node;
            allowed.insert(h.node);
            fresh_fos.erase(h.node);
        }
        // Leaves must be ordinary ports: only the depth-two shape produced by
        // one duplication front is handled.
        for (NodeId kid : kids)
            for (std::uint32_t i = 1; i <= 2; ++i) {
                auto aid = idx.at(kid, var(i));
                if (!aid) return false;
                const Arrow& a = g.arrow(*aid);
                if (!is_free(a.head) && port_ref(a.head).port == in0() &&
                    g.kind(port_ref(a.head).node).kind == Kind::FanOut)
                    return false;
            }

        for (const TreeMove& tm : untangle_script()) {
            if (!budget_left()) return false;
            auto node = tree_node_at(g, G, allowed, tm.path);
            if (!node) return false;
            Match step;
            if (tm.op == TreeMove::Op::CoComm) {
                step.kind = MoveKind::CoComm;
                step.nodes["fanout"] = *node;
            } else {
                bool fwd = tm.op == TreeMove::Op::AssocFwd;
                PortIndex cur(g);
                auto spine = cur.at(*node, var(fwd ? 1 : 2));
                if (!spine) return false;
                const Arrow& sa = g.arrow(*spine);
                if (is_free(sa.head)) return false;
                PortRef h = port_ref(sa.head);
                if (!allowed.count(h.node)) return false;
                step.kind = MoveKind::CoAssoc;
                step.reversed = !fwd;
                step.nodes["top"] = *node;
                step.nodes["bottom"] = h.node;
                step.arrows["spine"] = *spine;
            }
            apply_match(step);
        }
        if (!budget_left()) return false;
        // The tree now splits by copy; annihilate the fan-in against its root.
        PortIndex after(g);
        auto spine = after.at(F, out0());
        if (!spine) return false;
        Match fan;
        fan.kind = MoveKind::FanInCross;
        fan.nodes["fanin"] = F;
        fan.nodes["fanout"] = G;
        fan.arrows["spine"] = *spine;
        apply_match(fan);
        return true;
    }

    bool fanin_in_priority() const {
        return std::find(strat.priority.begin(), strat.priority.end(), MoveKind::FanInCross) !=
               strat.priority.end();
    }

    Trace run() {
        bool close_fronts = strat.untangle_shares && fanin_in_priority();
        while (true) {
            if (!budget_left()) {
                trace.status = ReduceStatus::StepLimit;
                break;
            }
            bool applied = false;
            std::optional<Match> held_back;
            std::optional<Match> material_dist;
            if (close_fronts && !fresh_fos.empty()) {
                // Close open duplication fronts before anything distributes
                // further; otherwise half-finished plumbing gets copied and
                // the work compounds.
                std::vector<Match> ms = enumerate_matches(g, MoveKind::FanInCross);
                std::erase_if(ms, [&](const Match& m) { return !fresh_fos.count(m.node("fanout")); });
                if (!ms.empty()) {
                    apply_match(pick(ms));
                    continue;
                }
            }
            for (MoveKind kind : strat.priority) {
                std::vector<Match> ms = enumerate_matches(g, kind);
                if (kind == MoveKind::Click && strat.saturated_click)
                    std::erase_if(ms, [](const Match& m) {
                        return m.click_case == ClickCase::MinusResidual;
                    });
                if (kind == MoveKind::PruneZM && strat.untangle_shares) {
                    auto held = std::partition(ms.begin(), ms.end(),
                                               [&](const Match& m) { return !feeds_fanin(m); });
                    if (held != ms.end() && !held_back) held_back = *held;
                    ms.erase(held, ms.end());
                }
                if ((kind == MoveKind::DistPlus || kind == MoveKind::DistMinus) && close_fronts &&
                    !fresh_fos.empty()) {
                    // Distribution that would open a new front waits until the
                    // running fronts have closed.
                    auto material = std::partition(ms.begin(), ms.end(), [&](const Match& m) {
                        return fresh_fos.count(m.node("fanout")) != 0;
                    });
                    if (material != ms.end() && !material_dist) material_dist = *material;
                    ms.erase(material, ms.end());
                }
                if (ms.empty()) continue;
                if (kind == MoveKind::FanInCross && strat.untangle_shares) {
                    std::vector<Match> direct;
                    std::vector<Match> stuck;
                    for (auto& m : ms) (is_stuck(m) ? stuck : direct).push_back(std::move(m));
                    if (!direct.empty()) {
                        applied = apply_match(pick(direct));
                    } else {
                        for (const Match& m : stuck)
                            if ((applied = try_untangle(m))) break;
                        // Shapes the regroup does not cover (chained fan-ins,
                        // trees with resolved arms) annihilate as they stand.
                        if (!applied && !stuck.empty()) applied = apply_match(pick(stuck));
                    }
                    if (applied) break;
                    continue;
                }
                applied = apply_match(pick(ms));
                break;
            }
            if (!applied && material_dist) applied = apply_match(*material_dist);
            if (!applied && held_back) applied = apply_match(*held_back);
            if (!applied) {
                trace.status = ReduceStatus::NormalForm;
                break;
            }
        }
        trace.final = g;
        return std::move(trace);
    }
};

}  // namespace

Trace reduce(const ZGraph& g, const Strategy& s) {
    Engine e(g, s);
    return e.run();
}

ZGraph replay_trace(const ZGraph& initial, const Trace& t) {
    ZGraph g = initial;
    for (const TraceStep& step : t.steps) g = apply(g, step.match);
    return g;
}

std::string format_trace(const Trace& t) {
    std::ostringstream out;
    out << "initial: " << std::hex << t.fp_initial << std::dec << "\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        out << "step " << (i + 1) << ": " << t.steps[i].summary << " -> " << std::hex
            << t.steps[i].fp_after << std::dec << "\n";
    }
    out << (t.status == ReduceStatus::NormalForm ? "normal-form" : "step-limit") << ", loops "
        << t.final.loop_count() << "\n";
    return out.str();
}

LoopCompare equal_mod_loops(const ZGraph& a, const ZGraph& b) {
    auto [ga, la] = strip_loops(a);
    auto [gb, lb] = strip_loops(b);
    std::uint32_t diff = la > lb ? la - lb : lb - la;
    return {isomorphic(ga, gb, {/*fanout_outs_unordered=*/true}), diff};
}

std::optional<std::vector<PathStep>> search_path(const ZGraph& from, const ZGraph& target,
                                                 int depth) {
    struct State {
        ZGraph g;
        std::vector<PathStep> path;
    };
    std::deque<State> queue;
    std::set<std::string> visited;
    queue.push_back({from, {}});
    visited.insert(emit_zg(from));
    while (!queue.empty()) {
        State s = std::move(queue.front());
        queue.pop_front();
        if (equal_mod_loops(s.g, target).equal) return s.path;
        if (static_cast<int>(s.path.size()) >= depth) continue;
        auto expand = [&](const Match& m) {
            ZGraph child = apply(s.g, m);
            std::string key = emit_zg(child);
            if (visited.count(key)) return;
            visited.insert(std::move(key));
            auto path = s.path;
            path.push_back({m.kind, m.reversed, m.summary()});
            queue.push_back({std::move(child), std::move(path)});
        };
        for (MoveKind kind : all_move_kinds()) {
            for (const Match& m : enumerate_matches(s.g, kind)) expand(m);
            for (const Match& m : enumerate_reverse_matches(s.g, kind)) expand(m);
        }
    }
    return std::nullopt;
}

namespace {

std::optional<ArrowId> single_free_out(const ZGraph& g) {
    std::optional<ArrowId> out;
    for (const auto& [aid, a] : g.arrows()) {
        if (!is_free(a.head)) continue;
        if (out) return std::nullopt;
        out = aid;
    }
    return out;
}

}  // namespace

MultiplyResult multiply(const ZGraph& a) {
    ZGraph g = a;
    auto out_arrow = single_free_out(g);
    if (!out_arrow) throw std::invalid_argument("multiply: graph must have exactly one free out end");
    NodeId fo = g.add_node(fan_out());
    g.set_head(*out_arrow, PortRef{fo, in0()});
    g.add_arrow(Endpoint{PortRef{fo, var(1)}}, Endpoint{FreeEnd{g.fresh_label("o")}});
    g.add_arrow(Endpoint{PortRef{fo, var(2)}}, Endpoint{FreeEnd{g.fresh_label("o")}});

    Trace tr = reduce(g, multiply_strategy());
    auto [stripped, loops] = strip_loops(tr.final);
    (void)loops;
    auto [orig, orig_loops] = strip_loops(a);
    (void)orig_loops;
    std::vector<ZGraph> comps = components(stripped);
    bool ok = tr.status == ReduceStatus::NormalForm && comps.size() == 2;
    if (ok)
        for (const ZGraph& c : comps)
            ok = ok && isomorphic(c, orig, {/*fanout_outs_unordered=*/true});
    return {ok, tr.final, std::move(tr)};
}

KillResult kill(const ZGraph& a) {
    ZGraph g = a;
    auto out_arrow = single_free_out(g);
    if (!out_arrow) throw std::invalid_argument("kill: graph must have exactly one free out end");
    NodeId t = g.add_node(termination());
    g.set_head(*out_arrow, PortRef{t, in0()});

    Trace tr = reduce(g, kill_strategy());
    bool ok = tr.status == ReduceStatus::NormalForm && tr.final.nodes().empty() &&
              tr.final.arrows().empty();
    std::uint32_t loops = tr.final.loop_count();
    return {ok, loops, std::move(tr)};
}

}  // namespace zipper
