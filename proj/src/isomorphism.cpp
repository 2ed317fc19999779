#include "zipper/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace zipper {

namespace {

constexpr std::uint64_t kFreeToken = ~0ull;
constexpr std::uint64_t kNoneToken = ~0ull - 1;

std::uint64_t port_code(const NodeKind& k, Port p, bool fo_unordered) {
    std::uint32_t index = p.index;
    if (fo_unordered && k.kind == Kind::FanOut && p.slot == Slot::Var) index = 1;
    return (static_cast<std::uint64_t>(p.slot) << 32) | index;
}

std::uint64_t kind_code(const NodeKind& k) {
    return (static_cast<std::uint64_t>(k.kind) << 32) | k.arity;
}

// One round of colour refinement. Signature of a node: its colour plus the
// sorted multiset of (own port, neighbour colour, neighbour port) triples.
using Colors = std::map<NodeId, std::uint64_t>;

Colors refine(const ZGraph& g, Colors colors, bool fo_unordered) {
    PortIndex idx(g);
    std::size_t ncolors = std::set<std::uint64_t>().size();
    while (true) {
        using Sig = std::pair<std::uint64_t, std::vector<std::array<std::uint64_t, 3>>>;
        std::map<NodeId, Sig> sigs;
        for (const auto& [nid, k] : g.nodes()) {
            Sig s{colors.at(nid), {}};
            for (Port p : ports_of(k)) {
                std::uint64_t own = port_code(k, p, fo_unordered);
                auto aid = idx.at(nid, p);
                if (!aid) {
                    s.second.push_back({own, kNoneToken, 0});
                    continue;
                }
                const Arrow& a = g.arrow(*aid);
                const Endpoint& other = (!is_free(a.tail) && port_ref(a.tail) == PortRef{nid, p})
                                            ? a.head
                                            : a.tail;
                if (is_free(other)) {
                    s.second.push_back({own, kFreeToken, 0});
                } else {
                    const PortRef& pr = port_ref(other);
                    s.second.push_back({own, colors.at(pr.node),
                                        port_code(g.kind(pr.node), pr.port, fo_unordered)});
                }
            }
            std::sort(s.second.begin(), s.second.end());
            sigs.emplace(nid, std::move(s));
        }
        std::map<Sig, std::uint64_t> rank;
        for (const auto& [nid, s] : sigs) rank.emplace(s, 0);
        std::uint64_t r = 0;
        for (auto& [s, v] : rank) v = r++;
        Colors next;
        for (const auto& [nid, s] : sigs) next[nid] = rank.at(s);
        std::set<std::uint64_t> distinct;
        for (const auto& [nid, c] : next) distinct.insert(c);
        bool stable = distinct.size() == ncolors;
        ncolors = distinct.size();
        colors = std::move(next);
        if (stable) return colors;
    }
}

Colors initial_colors(const ZGraph& g) {
    std::set<std::uint64_t> codes;
    for (const auto& [nid, k] : g.nodes()) codes.insert(kind_code(k));
    std::map<std::uint64_t, std::uint64_t> rank;
    std::uint64_t r = 0;
    for (auto c : codes) rank[c] = r++;
    Colors colors;
    for (const auto& [nid, k] : g.nodes()) colors[nid] = rank.at(kind_code(k));
    return colors;
}

// --- isomorphism backtracking ------------------------------------------

Endpoint other_end(const ZGraph& g, ArrowId aid, PortRef self) {
    const Arrow& ar = g.arrow(aid);
    if (!is_free(ar.tail) && port_ref(ar.tail) == self) return ar.head;
    return ar.tail;
}

bool consistent(const ZGraph& ga, const ZGraph& gb, const PortIndex& ia, const PortIndex& ib,
                bool quotient, const std::map<NodeId, NodeId>& fwd, const std::set<NodeId>& used,
                const std::map<NodeId, bool>& swaps, NodeId u, NodeId v, bool swap_u) {
    NodeKind k = ga.kind(u);
    if (!(k == gb.kind(v))) return false;
    auto image_port = [&](NodeId w, Port p, bool sw) {
        if (quotient && ga.kind(w).kind == Kind::FanOut && p.slot == Slot::Var && sw)
            return var(p.index == 1 ? 2u : 1u);
        return p;
    };
    for (Port p : ports_of(k)) {
        Port q = image_port(u, p, swap_u);
        auto a1 = ia.at(u, p);
        auto a2 = ib.at(v, q);
        if (a1.has_value() != a2.has_value()) return false;
        if (!a1) continue;
        Endpoint e1 = other_end(ga, *a1, PortRef{u, p});
        Endpoint e2 = other_end(gb, *a2, PortRef{v, q});
        if (is_free(e1) != is_free(e2)) return false;
        if (is_free(e1)) continue;
        PortRef p1 = port_ref(e1);
        PortRef p2 = port_ref(e2);
        auto it = fwd.find(p1.node);
        if (it != fwd.end()) {
            NodeId w = p1.node;
            bool sw = false;
            auto sit = swaps.find(w);
            if (sit != swaps.end()) sw = sit->second;
            if (w == u) sw = swap_u;  // self arrows use the candidate swap
            NodeId want = (w == u) ? v : it->second;
            if (p2.node != want) return false;
            if (!(image_port(w, p1.port, sw) == p2.port)) return false;
        } else {
            if (used.count(p2.node)) return false;
            if (!(ga.kind(p1.node) == gb.kind(p2.node))) return false;
        }
    }
    return true;
}

bool backtrack(const ZGraph& ga, const ZGraph& gb, const PortIndex& ia, const PortIndex& ib,
               bool quotient, const std::vector<NodeId>& order, std::size_t pos,
               const std::map<NodeId, std::vector<NodeId>>& candidates,
               std::map<NodeId, NodeId>& fwd, std::set<NodeId>& used,
               std::map<NodeId, bool>& swaps) {
    if (pos == order.size()) return true;
    NodeId u = order[pos];
    for (NodeId v : candidates.at(u)) {
        if (used.count(v)) continue;
        std::vector<bool> swap_options{false};
        if (quotient && ga.kind(u).kind == Kind::FanOut) swap_options.push_back(true);
        for (bool sw : swap_options) {
            if (!consistent(ga, gb, ia, ib, quotient, fwd, used, swaps, u, v, sw)) continue;
            fwd[u] = v;
            used.insert(v);
            swaps[u] = sw;
            if (backtrack(ga, gb, ia, ib, quotient, order, pos + 1, candidates, fwd, used, swaps))
                return true;
            fwd.erase(u);
            used.erase(v);
            swaps.erase(u);
        }
    }
    return false;
}

struct ArrowStats {
    std::size_t total = 0, free_tail = 0, free_head = 0, free_free = 0;
};

ArrowStats arrow_stats(const ZGraph& g) {
    ArrowStats s;
    for (const auto& [aid, a] : g.arrows()) {
        ++s.total;
        bool ft = is_free(a.tail), fh = is_free(a.head);
        if (ft && fh) ++s.free_free;
        else if (ft) ++s.free_tail;
        else if (fh) ++s.free_head;
    }
    return s;
}

}  // namespace

bool isomorphic(const ZGraph& a, const ZGraph& b, IsoOptions opts) {
    if (a.loop_count() != b.loop_count()) return false;
    if (a.nodes().size() != b.nodes().size()) return false;
    ArrowStats sa = arrow_stats(a), sb = arrow_stats(b);
    if (sa.total != sb.total || sa.free_tail != sb.free_tail || sa.free_head != sb.free_head ||
        sa.free_free != sb.free_free)
        return false;

    bool q = opts.fanout_outs_unordered;
    Colors ca = refine(a, initial_colors(a), q);
    Colors cb = refine(b, initial_colors(b), q);

    // Colour ranks are computed per graph, so rebuild a shared ranking keyed
    // by (kind, refined signature) via histogram comparison.
    std::map<std::uint64_t, std::vector<NodeId>> class_a, class_b;
    for (const auto& [nid, c] : ca) class_a[c].push_back(nid);
    for (const auto& [nid, c] : cb) class_b[c].push_back(nid);
    if (class_a.size() != class_b.size()) return false;
    // Refinement is deterministic and starts from iso-invariant data, so the
    // sorted class-size sequences with matching kind multisets must align.
    auto ita = class_a.begin();
    auto itb = class_b.begin();
    std::map<NodeId, std::vector<NodeId>> candidates;
    for (; ita != class_a.end(); ++ita, ++itb) {
        if (ita->second.size() != itb->second.size()) return false;
        NodeKind ka = a.kind(ita->second.front());
        for (NodeId u : ita->second) {
            if (!(a.kind(u) == ka)) return false;
            candidates[u] = itb->second;
        }
        for (NodeId v : itb->second)
            if (!(b.kind(v) == ka)) return false;
    }

    std::vector<NodeId> order;
    for (const auto& [nid, k] : a.nodes()) order.push_back(nid);
    std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
        std::size_t cx = candidates.at(x).size(), cy = candidates.at(y).size();
        if (cx != cy) return cx < cy;
        return x < y;
    });

    PortIndex ia(a), ib(b);
    std::map<NodeId, NodeId> fwd;
    std::set<NodeId> used;
    std::map<NodeId, bool> swaps;
    return backtrack(a, b, ia, ib, q, order, 0, candidates, fwd, used, swaps);
}

// --- canonical order -----------------------------------------------------

namespace {

using Encoding = std::vector<std::uint64_t>;

Encoding encode_order(const ZGraph& g, const std::vector<NodeId>& order) {
    std::map<NodeId, std::uint64_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    PortIndex idx(g);
    Encoding enc;
    for (NodeId nid : order) {
        NodeKind k = g.kind(nid);
        enc.push_back(kind_code(k));
        for (Port p : ports_of(k)) {
            auto aid = idx.at(nid, p);
            if (!aid) {
                enc.push_back(kNoneToken);
                continue;
            }
            Endpoint other = other_end(g, *aid, PortRef{nid, p});
            if (is_free(other)) {
                enc.push_back(kFreeToken);
            } else {
                const PortRef& pr = port_ref(other);
                enc.push_back(pos.at(pr.node));
                enc.push_back(port_code(g.kind(pr.node), pr.port, false));
            }
        }
    }
    return enc;
}

void canon_search(const ZGraph& g, Colors colors, std::vector<NodeId>& best_order, Encoding& best,
                  bool& have_best) {
    colors = refine(g, std::move(colors), false);
    std::map<std::uint64_t, std::vector<NodeId>> classes;
    for (const auto& [nid, c] : colors) classes[c].push_back(nid);

    const std::vector<NodeId>* target = nullptr;
    for (const auto& [c, members] : classes) {
        if (members.size() > 1) {
            target = &members;
            break;
        }
    }
    if (!target) {
        std::vector<NodeId> order;
        for (const auto& [c, members] : classes) order.push_back(members.front());
        Encoding enc = encode_order(g, order);
        if (!have_best || enc < best) {
            best = std::move(enc);
            best_order = std::move(order);
            have_best = true;
        }
        return;
    }
    for (NodeId pick : *target) {
        Colors branched = colors;
        std::uint64_t fresh = 0;
        for (const auto& [nid, c] : branched) fresh = std::max(fresh, c);
        branched[pick] = fresh + 1;
        canon_search(g, std::move(branched), best_order, best, have_best);
    }
}

}  // namespace

std::vector<NodeId> canonical_node_order(const ZGraph& g) {
    if (g.nodes().empty()) return {};
    std::vector<NodeId> best_order;
    Encoding best;
    bool have_best = false;
    canon_search(g, initial_colors(g), best_order, best, have_best);
    return best_order;
}

}  // namespace zipper
