#include "zipper/moves.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace zipper {

namespace {

constexpr std::array<std::pair<MoveKind, std::string_view>, kMoveKindCount> kNames{{
    {MoveKind::Click, "click"},
    {MoveKind::Zip, "zip"},
    {MoveKind::TowerMerge, "tower+"},
    {MoveKind::TowerSplit, "tower-"},
    {MoveKind::CoComm, "cocomm"},
    {MoveKind::CoAssoc, "coassoc"},
    {MoveKind::FanInCross, "fanin"},
    {MoveKind::DistPlus, "dist+"},
    {MoveKind::DistMinus, "dist-"},
    {MoveKind::PruneZP, "prune-zp"},
    {MoveKind::PruneZM, "prune-zm"},
    {MoveKind::PruneFO, "prune-fo"},
    {MoveKind::PruneFI, "prune-fi"},
    {MoveKind::PruneArrowT, "prune-arrow"},
}};

}  // namespace

std::string_view move_name(MoveKind k) {
    for (auto [kind, name] : kNames)
        if (kind == k) return name;
    return "?";
}

std::optional<MoveKind> move_from_name(std::string_view name) {
    for (auto [kind, n] : kNames)
        if (n == name) return kind;
    return std::nullopt;
}

std::vector<MoveKind> all_move_kinds() {
    std::vector<MoveKind> out;
    for (auto [kind, name] : kNames) out.push_back(kind);
    return out;
}

NodeId Match::node(const std::string& role) const {
    auto it = nodes.find(role);
    if (it == nodes.end()) throw PatternMismatch("missing node role '" + role + "'");
    return it->second;
}

ArrowId Match::arrow(const std::string& role) const {
    auto it = arrows.find(role);
    if (it == arrows.end()) throw PatternMismatch("missing arrow role '" + role + "'");
    return it->second;
}

std::string Match::summary() const {
    std::ostringstream out;
    out << move_name(kind);
    if (reversed) out << "^-1";
    if (kind == MoveKind::Click) out << "(n=" << arity_a << ",m=" << arity_b << ")";
    if (kind == MoveKind::TowerSplit) out << "(at " << split_point << ")";
    for (const auto& [role, id] : nodes) out << " " << role << "=" << id;
    return out.str();
}

// --- shared helpers -------------------------------------------------------

namespace {

void need(bool cond, const std::string& msg) {
    if (!cond) throw PatternMismatch(msg);
}

ArrowId arrow_at(const PortIndex& idx, NodeId n, Port p) {
    auto a = idx.at(n, p);
    need(a.has_value(), "no arrow at node " + std::to_string(n) + " port " + port_name(p));
    return *a;
}

void need_occupied(const ZGraph& g, const PortIndex& idx, NodeId n) {
    need(g.has_node(n), "node " + std::to_string(n) + " missing");
    for (Port p : ports_of(g.kind(n)))
        need(idx.at(n, p).has_value(),
             "node " + std::to_string(n) + " port " + port_name(p) + " unoccupied");
}

NodeKind need_kind(const ZGraph& g, NodeId n, Kind k) {
    need(g.has_node(n), "node " + std::to_string(n) + " missing");
    NodeKind nk = g.kind(n);
    need(nk.kind == k, "node " + std::to_string(n) + " is " + kind_name(nk) + ", expected other kind");
    return nk;
}

void need_wiring(const ZGraph& g, ArrowId a, PortRef tail, PortRef head) {
    need(g.has_arrow(a), "arrow " + std::to_string(a) + " missing");
    const Arrow& ar = g.arrow(a);
    need(!is_free(ar.tail) && port_ref(ar.tail) == tail && !is_free(ar.head) &&
             port_ref(ar.head) == head,
         "arrow " + std::to_string(a) + " rewired since match");
}

struct FusePair {
    PortRef in;   // head side, on a node being deleted
    PortRef out;  // tail side, on a node being deleted
};

// Glue the arrows across deleted ports: whatever enters pair s's in port
// continues from its out port. Open runs collapse to one arrow, closed runs
// become loops. Chains record the slots crossed, which suffices to cut the
// result back apart.
std::vector<FusionChain> fuse(ZGraph& g, const std::vector<FusePair>& pairs) {
    PortIndex idx(g);
    std::vector<ArrowId> in_arrow(pairs.size()), out_arrow(pairs.size());
    std::map<ArrowId, int> head_slot;
    std::set<ArrowId> is_pair_out;
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        in_arrow[s] = arrow_at(idx, pairs[s].in.node, pairs[s].in.port);
        out_arrow[s] = arrow_at(idx, pairs[s].out.node, pairs[s].out.port);
        head_slot[in_arrow[s]] = static_cast<int>(s);
        is_pair_out.insert(out_arrow[s]);
    }
    std::set<ArrowId> involved;
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        involved.insert(in_arrow[s]);
        involved.insert(out_arrow[s]);
    }

    struct OpenRun {
        Endpoint tail, head;
        std::vector<int> slots;
    };
    std::vector<OpenRun> open;
    std::vector<std::vector<int>> cycles;
    std::set<ArrowId> visited;
    for (ArrowId a : involved) {
        if (visited.count(a) || is_pair_out.count(a)) continue;
        OpenRun run{g.arrow(a).tail, {}, {}};
        ArrowId cur = a;
        visited.insert(cur);
        while (head_slot.count(cur)) {
            int s = head_slot.at(cur);
            run.slots.push_back(s);
            cur = out_arrow[s];
            visited.insert(cur);
        }
        run.head = g.arrow(cur).head;
        open.push_back(std::move(run));
    }
    for (ArrowId a : involved) {
        if (visited.count(a)) continue;
        std::vector<int> slots;
        ArrowId cur = a;
        do {
            visited.insert(cur);
            int s = head_slot.at(cur);
            slots.push_back(s);
            cur = out_arrow[s];
        } while (cur != a);
        cycles.push_back(std::move(slots));
    }

    for (ArrowId a : involved) g.erase_arrow(a);
    std::vector<FusionChain> chains;
    for (auto& run : open) {
        ArrowId id = g.add_arrow(run.tail, run.head);
        chains.push_back({id, std::move(run.slots)});
    }
    for (auto& slots : cycles) {
        g.add_loops(1);
        chains.push_back({std::nullopt, std::move(slots)});
    }
    return chains;
}

// Inverse of fuse against freshly created pair ports.
void unfuse(ZGraph& g, const std::vector<FusionChain>& chains, const std::vector<FusePair>& pairs) {
    std::vector<bool> seen(pairs.size(), false);
    for (const auto& c : chains)
        for (int s : c.slots) {
            need(s >= 0 && s < static_cast<int>(pairs.size()) && !seen[s],
                 "fusion chain slots invalid");
            seen[s] = true;
        }
    need(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
         "fusion chains do not cover all pairs");
    for (const auto& c : chains) {
        if (c.arrow) {
            need(g.has_arrow(*c.arrow), "fused arrow missing");
            Arrow a = g.arrow(*c.arrow);
            g.erase_arrow(*c.arrow);
            Endpoint tail = a.tail;
            for (int s : c.slots) {
                g.add_arrow(tail, Endpoint{pairs[s].in});
                tail = Endpoint{pairs[s].out};
            }
            g.add_arrow(tail, a.head);
        } else {
            need(g.loop_count() >= 1, "no loop to unfuse");
            need(!c.slots.empty(), "empty fusion cycle");
            g.set_loop_count(g.loop_count() - 1);
            for (std::size_t i = 0; i < c.slots.size(); ++i) {
                int s = c.slots[i];
                int next = c.slots[(i + 1) % c.slots.size()];
                g.add_arrow(Endpoint{pairs[s].out}, Endpoint{pairs[next].in});
            }
        }
    }
}

std::vector<FusePair> zip_pairs(NodeId z, std::uint32_t n) {
    std::vector<FusePair> pairs;
    pairs.push_back({{z, in0()}, {z, out0()}});
    for (std::uint32_t i = 1; i <= n; ++i) pairs.push_back({{z, arg(i)}, {z, var(i)}});
    return pairs;
}

std::vector<FusePair> fanin_pairs(NodeId f, NodeId g) {
    // Crosswise: first in continues from the second out and vice versa.
    return {{{f, arg(1)}, {g, var(2)}}, {{f, arg(2)}, {g, var(1)}}};
}

// --- forward applications --------------------------------------------------

ApplyResult apply_click(ZGraph g, const Match& m) {
    NodeId M = m.node("minus"), P = m.node("plus");
    NodeKind km = need_kind(g, M, Kind::HalfZipperMinus);
    NodeKind kp = need_kind(g, P, Kind::HalfZipperPlus);
    std::uint32_t n = km.arity, mm = kp.arity;
    ArrowId spine = m.arrow("spine");
    need_wiring(g, spine, {M, out0()}, {P, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, M);
    need_occupied(g, idx, P);
    g.erase_arrow(spine);

    Match inv;
    inv.kind = MoveKind::Click;
    inv.reversed = true;
    inv.arity_a = n;
    inv.arity_b = mm;
    if (n == mm) {
        NodeId z = g.add_node(zipper_node(n));
        g.set_head(arrow_at(idx, M, in0()), PortRef{z, in0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_head(arrow_at(idx, P, arg(i)), PortRef{z, arg(i)});
        g.set_tail(arrow_at(idx, P, out0()), PortRef{z, out0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_tail(arrow_at(idx, M, var(i)), PortRef{z, var(i)});
        inv.click_case = ClickCase::Equal;
        inv.nodes["zipper"] = z;
    } else if (mm > n) {
        NodeId z = g.add_node(zipper_node(n));
        NodeId r = g.add_node(zp(mm - n));
        g.set_head(arrow_at(idx, M, in0()), PortRef{z, in0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_head(arrow_at(idx, P, arg(i)), PortRef{z, arg(i)});
        for (std::uint32_t j = 1; j <= mm - n; ++j)
            g.set_head(arrow_at(idx, P, arg(n + j)), PortRef{r, arg(j)});
        g.set_tail(arrow_at(idx, P, out0()), PortRef{r, out0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_tail(arrow_at(idx, M, var(i)), PortRef{z, var(i)});
        g.add_arrow(PortRef{z, out0()}, PortRef{r, in0()});
        inv.click_case = ClickCase::PlusResidual;
        inv.nodes["zipper"] = z;
        inv.nodes["residual"] = r;
    } else {
        NodeId z = g.add_node(zipper_node(mm));
        NodeId r = g.add_node(zm(n - mm));
        g.set_head(arrow_at(idx, M, in0()), PortRef{r, in0()});
        for (std::uint32_t i = 1; i <= mm; ++i) g.set_tail(arrow_at(idx, M, var(i)), PortRef{z, var(i)});
        for (std::uint32_t j = 1; j <= n - mm; ++j)
            g.set_tail(arrow_at(idx, M, var(mm + j)), PortRef{r, var(j)});
        for (std::uint32_t i = 1; i <= mm; ++i) g.set_head(arrow_at(idx, P, arg(i)), PortRef{z, arg(i)});
        g.set_tail(arrow_at(idx, P, out0()), PortRef{z, out0()});
        g.add_arrow(PortRef{r, out0()}, PortRef{z, in0()});
        inv.click_case = ClickCase::MinusResidual;
        inv.nodes["zipper"] = z;
        inv.nodes["residual"] = r;
    }
    g.erase_node(M);
    g.erase_node(P);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unclick(ZGraph g, const Match& m) {
    NodeId z = m.node("zipper");
    std::uint32_t n = m.arity_a, mm = m.arity_b;
    std::uint32_t q = (m.click_case == ClickCase::MinusResidual) ? mm : n;
    NodeKind kz = need_kind(g, z, Kind::Zipper);
    need(kz.arity == q, "zipper arity changed");
    PortIndex idx0(g);
    need_occupied(g, idx0, z);

    if (m.click_case == ClickCase::Equal) {
        need(n == mm, "unclick arity mismatch");
    } else if (m.click_case == ClickCase::PlusResidual) {
        NodeId r = m.node("residual");
        NodeKind kr = need_kind(g, r, Kind::HalfZipperPlus);
        need(kr.arity == mm - n, "residual arity changed");
        need_occupied(g, idx0, r);
        need_wiring(g, arrow_at(idx0, z, out0()), {z, out0()}, {r, in0()});
    } else {
        NodeId r = m.node("residual");
        NodeKind kr = need_kind(g, r, Kind::HalfZipperMinus);
        need(kr.arity == n - mm, "residual arity changed");
        need_occupied(g, idx0, r);
        need_wiring(g, arrow_at(idx0, z, in0()), {r, out0()}, {z, in0()});
    }

    NodeId M = g.add_node(zm(n));
    NodeId P = g.add_node(zp(mm));
    PortIndex idx(g);
    if (m.click_case == ClickCase::Equal) {
        g.set_head(arrow_at(idx, z, in0()), PortRef{M, in0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_tail(arrow_at(idx, z, var(i)), PortRef{M, var(i)});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_head(arrow_at(idx, z, arg(i)), PortRef{P, arg(i)});
        g.set_tail(arrow_at(idx, z, out0()), PortRef{P, out0()});
        g.erase_node(z);
    } else if (m.click_case == ClickCase::PlusResidual) {
        NodeId r = m.node("residual");
        g.erase_arrow(arrow_at(idx, z, out0()));  // connector into the residual
        g.set_head(arrow_at(idx, z, in0()), PortRef{M, in0()});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_tail(arrow_at(idx, z, var(i)), PortRef{M, var(i)});
        for (std::uint32_t i = 1; i <= n; ++i) g.set_head(arrow_at(idx, z, arg(i)), PortRef{P, arg(i)});
        for (std::uint32_t j = 1; j <= mm - n; ++j)
            g.set_head(arrow_at(idx, r, arg(j)), PortRef{P, arg(n + j)});
        g.set_tail(arrow_at(idx, r, out0()), PortRef{P, out0()});
        g.erase_node(z);
        g.erase_node(r);
    } else {
        NodeId r = m.node("residual");
        g.erase_arrow(arrow_at(idx, z, in0()));  // connector from the residual
        g.set_head(arrow_at(idx, r, in0()), PortRef{M, in0()});
        for (std::uint32_t i = 1; i <= mm; ++i) g.set_tail(arrow_at(idx, z, var(i)), PortRef{M, var(i)});
        for (std::uint32_t j = 1; j <= n - mm; ++j)
            g.set_tail(arrow_at(idx, r, var(j)), PortRef{M, var(mm + j)});
        for (std::uint32_t i = 1; i <= mm; ++i) g.set_head(arrow_at(idx, z, arg(i)), PortRef{P, arg(i)});
        g.set_tail(arrow_at(idx, z, out0()), PortRef{P, out0()});
        g.erase_node(z);
        g.erase_node(r);
    }
    ArrowId spine = g.add_arrow(PortRef{M, out0()}, PortRef{P, in0()});

    Match inv;
    inv.kind = MoveKind::Click;
    inv.nodes["minus"] = M;
    inv.nodes["plus"] = P;
    inv.arrows["spine"] = spine;
    inv.arity_a = n;
    inv.arity_b = mm;
    inv.click_case = m.click_case;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_zip(ZGraph g, const Match& m) {
    NodeId z = m.node("zipper");
    NodeKind kz = need_kind(g, z, Kind::Zipper);
    std::uint32_t n = kz.arity;
    PortIndex idx(g);
    need_occupied(g, idx, z);
    auto chains = fuse(g, zip_pairs(z, n));
    g.erase_node(z);

    Match inv;
    inv.kind = MoveKind::Zip;
    inv.reversed = true;
    inv.arity_a = n;
    inv.chains = std::move(chains);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unzip(ZGraph g, const Match& m) {
    std::uint32_t n = m.arity_a;
    need(n >= 1, "unzip arity must be >= 1");
    NodeId z = g.add_node(zipper_node(n));
    unfuse(g, m.chains, zip_pairs(z, n));

    Match inv;
    inv.kind = MoveKind::Zip;
    inv.nodes["zipper"] = z;
    inv.arity_a = n;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_tower_merge(ZGraph g, const Match& m) {
    NodeId src = m.node("src"), dst = m.node("dst");
    need(g.has_node(src) && g.has_node(dst), "tower nodes missing");
    NodeKind ks = g.kind(src), kd = g.kind(dst);
    need(ks.kind == kd.kind && (ks.kind == Kind::HalfZipperMinus || ks.kind == Kind::HalfZipperPlus),
         "tower merge needs two half-zippers of the same sign");
    ArrowId spine = m.arrow("spine");
    need_wiring(g, spine, {src, out0()}, {dst, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, src);
    need_occupied(g, idx, dst);
    g.erase_arrow(spine);

    std::uint32_t j, total = ks.arity + kd.arity;
    NodeId R;
    if (ks.kind == Kind::HalfZipperMinus) {
        // src is the inner tower: its variables come after the outer's.
        j = kd.arity;
        R = g.add_node(zm(total));
        g.set_head(arrow_at(idx, src, in0()), PortRef{R, in0()});
        g.set_tail(arrow_at(idx, dst, out0()), PortRef{R, out0()});
        for (std::uint32_t i = 1; i <= kd.arity; ++i)
            g.set_tail(arrow_at(idx, dst, var(i)), PortRef{R, var(i)});
        for (std::uint32_t i = 1; i <= ks.arity; ++i)
            g.set_tail(arrow_at(idx, src, var(i)), PortRef{R, var(j + i)});
    } else {
        // src is the lower applications: its arguments come first.
        j = ks.arity;
        R = g.add_node(zp(total));
        g.set_head(arrow_at(idx, src, in0()), PortRef{R, in0()});
        for (std::uint32_t i = 1; i <= ks.arity; ++i)
            g.set_head(arrow_at(idx, src, arg(i)), PortRef{R, arg(i)});
        for (std::uint32_t i = 1; i <= kd.arity; ++i)
            g.set_head(arrow_at(idx, dst, arg(i)), PortRef{R, arg(j + i)});
        g.set_tail(arrow_at(idx, dst, out0()), PortRef{R, out0()});
    }
    g.erase_node(src);
    g.erase_node(dst);

    Match inv;
    inv.kind = MoveKind::TowerSplit;
    inv.nodes["node"] = R;
    inv.arity_a = total;
    inv.split_point = j;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_tower_split(ZGraph g, const Match& m) {
    NodeId N = m.node("node");
    need(g.has_node(N), "tower node missing");
    NodeKind k = g.kind(N);
    need(k.kind == Kind::HalfZipperMinus || k.kind == Kind::HalfZipperPlus,
         "tower split needs a half-zipper");
    std::uint32_t n = k.arity, p = m.split_point;
    need(n >= 2 && p >= 1 && p <= n - 1, "split point out of range");
    PortIndex idx(g);
    need_occupied(g, idx, N);

    Match inv;
    inv.kind = MoveKind::TowerMerge;
    if (k.kind == Kind::HalfZipperMinus) {
        NodeId outer = g.add_node(zm(p));
        NodeId inner = g.add_node(zm(n - p));
        for (std::uint32_t i = 1; i <= p; ++i)
            g.set_tail(arrow_at(idx, N, var(i)), PortRef{outer, var(i)});
        for (std::uint32_t i = 1; i <= n - p; ++i)
            g.set_tail(arrow_at(idx, N, var(p + i)), PortRef{inner, var(i)});
        g.set_head(arrow_at(idx, N, in0()), PortRef{inner, in0()});
        g.set_tail(arrow_at(idx, N, out0()), PortRef{outer, out0()});
        ArrowId spine = g.add_arrow(PortRef{inner, out0()}, PortRef{outer, in0()});
        inv.nodes["src"] = inner;
        inv.nodes["dst"] = outer;
        inv.arrows["spine"] = spine;
        inv.arity_a = n - p;
        inv.arity_b = p;
    } else {
        NodeId lower = g.add_node(zp(p));
        NodeId upper = g.add_node(zp(n - p));
        g.set_head(arrow_at(idx, N, in0()), PortRef{lower, in0()});
        for (std::uint32_t i = 1; i <= p; ++i)
            g.set_head(arrow_at(idx, N, arg(i)), PortRef{lower, arg(i)});
        for (std::uint32_t i = 1; i <= n - p; ++i)
            g.set_head(arrow_at(idx, N, arg(p + i)), PortRef{upper, arg(i)});
        g.set_tail(arrow_at(idx, N, out0()), PortRef{upper, out0()});
        ArrowId spine = g.add_arrow(PortRef{lower, out0()}, PortRef{upper, in0()});
        inv.nodes["src"] = lower;
        inv.nodes["dst"] = upper;
        inv.arrows["spine"] = spine;
        inv.arity_a = p;
        inv.arity_b = n - p;
    }
    g.erase_node(N);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_cocomm(ZGraph g, const Match& m) {
    NodeId F = m.node("fanout");
    need_kind(g, F, Kind::FanOut);
    PortIndex idx(g);
    ArrowId a1 = arrow_at(idx, F, var(1));
    ArrowId a2 = arrow_at(idx, F, var(2));
    g.set_tail(a1, PortRef{F, var(2)});
    g.set_tail(a2, PortRef{F, var(1)});
    Match inv = m;
    inv.reversed = false;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_coassoc(ZGraph g, const Match& m) {
    NodeId A = m.node("top"), B = m.node("bottom");
    need_kind(g, A, Kind::FanOut);
    need_kind(g, B, Kind::FanOut);
    PortIndex idx(g);
    need_occupied(g, idx, A);
    need_occupied(g, idx, B);
    if (!m.reversed) {
        // A(B(p,q), r) -> A(p, B(q, r)), external arrows keep their identity.
        ArrowId spine = arrow_at(idx, A, var(1));
        need_wiring(g, spine, {A, var(1)}, {B, in0()});
        ArrowId p = arrow_at(idx, B, var(1));
        ArrowId q = arrow_at(idx, B, var(2));
        ArrowId r = arrow_at(idx, A, var(2));
        g.set_tail(p, PortRef{A, var(1)});
        g.set_tail(spine, PortRef{A, var(2)});
        g.set_tail(q, PortRef{B, var(1)});
        g.set_tail(r, PortRef{B, var(2)});
    } else {
        // A(x, B(y,z)) -> A(B(x,y), z)
        ArrowId spine = arrow_at(idx, A, var(2));
        need_wiring(g, spine, {A, var(2)}, {B, in0()});
        ArrowId x = arrow_at(idx, A, var(1));
        ArrowId y = arrow_at(idx, B, var(1));
        ArrowId z = arrow_at(idx, B, var(2));
        g.set_tail(x, PortRef{B, var(1)});
        g.set_tail(y, PortRef{B, var(2)});
        g.set_tail(z, PortRef{A, var(2)});
        g.set_tail(spine, PortRef{A, var(1)});
    }
    Match inv = m;
    inv.reversed = !m.reversed;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_fanin(ZGraph g, const Match& m) {
    NodeId F = m.node("fanin"), G = m.node("fanout");
    need_kind(g, F, Kind::FanIn);
    need_kind(g, G, Kind::FanOut);
    ArrowId spine = m.arrow("spine");
    need_wiring(g, spine, {F, out0()}, {G, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, F);
    need_occupied(g, idx, G);
    g.erase_arrow(spine);
    auto chains = fuse(g, fanin_pairs(F, G));
    g.erase_node(F);
    g.erase_node(G);

    Match inv;
    inv.kind = MoveKind::FanInCross;
    inv.reversed = true;
    inv.chains = std::move(chains);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unfanin(ZGraph g, const Match& m) {
    NodeId F = g.add_node(fan_in());
    NodeId G = g.add_node(fan_out());
    unfuse(g, m.chains, fanin_pairs(F, G));
    ArrowId spine = g.add_arrow(PortRef{F, out0()}, PortRef{G, in0()});

    Match inv;
    inv.kind = MoveKind::FanInCross;
    inv.nodes["fanin"] = F;
    inv.nodes["fanout"] = G;
    inv.arrows["spine"] = spine;
    return {std::move(g), std::move(inv)};
}

std::vector<Port> dist_in_ports(Kind kind, std::uint32_t n) {
    // The ports whose arrows receive a fresh branching node.
    std::vector<Port> ps{in0()};
    if (kind == Kind::HalfZipperPlus)
        for (std::uint32_t i = 1; i <= n; ++i) ps.push_back(arg(i));
    return ps;
}

ApplyResult apply_dist(ZGraph g, const Match& m) {
    bool plus = m.kind == MoveKind::DistPlus;
    NodeId N = m.node("node"), G = m.node("fanout");
    NodeKind kn = need_kind(g, N, plus ? Kind::HalfZipperPlus : Kind::HalfZipperMinus);
    need_kind(g, G, Kind::FanOut);
    std::uint32_t n = kn.arity;
    ArrowId spine = m.arrow("spine");
    need_wiring(g, spine, {N, out0()}, {G, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, N);
    need_occupied(g, idx, G);
    g.erase_arrow(spine);

    NodeId c1 = g.add_node(kn);
    NodeId c2 = g.add_node(kn);
    Match inv;
    inv.kind = m.kind;
    inv.reversed = true;
    inv.arity_a = n;
    inv.nodes["copy1"] = c1;
    inv.nodes["copy2"] = c2;

    if (plus) {
        std::vector<Port> ins = dist_in_ports(kn.kind, n);
        for (std::size_t i = 0; i < ins.size(); ++i) {
            NodeId B = g.add_node(fan_out());
            g.set_head(arrow_at(idx, N, ins[i]), PortRef{B, in0()});
            g.add_arrow(PortRef{B, var(1)}, PortRef{c1, ins[i]});
            g.add_arrow(PortRef{B, var(2)}, PortRef{c2, ins[i]});
            inv.nodes["branch" + std::to_string(i)] = B;
        }
    } else {
        NodeId B = g.add_node(fan_out());
        g.set_head(arrow_at(idx, N, in0()), PortRef{B, in0()});
        g.add_arrow(PortRef{B, var(1)}, PortRef{c1, in0()});
        g.add_arrow(PortRef{B, var(2)}, PortRef{c2, in0()});
        inv.nodes["branch0"] = B;
        for (std::uint32_t i = 1; i <= n; ++i) {
            NodeId FI = g.add_node(fan_in());
            g.set_tail(arrow_at(idx, N, var(i)), PortRef{FI, out0()});
            // First fan-in arm from copy2, second from copy1: crosswise FAN-IN
            // then reconnects each copy to itself.
            g.add_arrow(PortRef{c2, var(i)}, PortRef{FI, arg(1)});
            g.add_arrow(PortRef{c1, var(i)}, PortRef{FI, arg(2)});
            inv.nodes["branch" + std::to_string(i)] = FI;
        }
    }
    g.set_tail(arrow_at(idx, G, var(1)), PortRef{c1, out0()});
    g.set_tail(arrow_at(idx, G, var(2)), PortRef{c2, out0()});
    g.erase_node(N);
    g.erase_node(G);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_undist(ZGraph g, const Match& m) {
    bool plus = m.kind == MoveKind::DistPlus;
    std::uint32_t n = m.arity_a;
    NodeId c1 = m.node("copy1"), c2 = m.node("copy2");
    NodeKind kc = plus ? zp(n) : zm(n);
    need(g.has_node(c1) && g.kind(c1) == kc, "copy1 shape changed");
    need(g.has_node(c2) && g.kind(c2) == kc, "copy2 shape changed");
    PortIndex idx(g);
    need_occupied(g, idx, c1);
    need_occupied(g, idx, c2);

    NodeId N = g.add_node(kc);
    NodeId G = g.add_node(fan_out());

    std::size_t branch_count = plus ? n + 1 : n + 1;
    for (std::size_t bi = 0; bi < branch_count; ++bi) {
        NodeId B = m.node("branch" + std::to_string(bi));
        if (plus || bi == 0) {
            need_kind(g, B, Kind::FanOut);
            Port p = plus ? dist_in_ports(kc.kind, n)[bi] : in0();
            ArrowId b1 = arrow_at(idx, B, var(1));
            ArrowId b2 = arrow_at(idx, B, var(2));
            need_wiring(g, b1, {B, var(1)}, {c1, p});
            need_wiring(g, b2, {B, var(2)}, {c2, p});
            g.erase_arrow(b1);
            g.erase_arrow(b2);
            g.set_head(arrow_at(idx, B, in0()), PortRef{N, p});
            g.erase_node(B);
        } else {
            need_kind(g, B, Kind::FanIn);
            std::uint32_t i = static_cast<std::uint32_t>(bi);
            ArrowId a1 = arrow_at(idx, B, arg(1));
            ArrowId a2 = arrow_at(idx, B, arg(2));
            need_wiring(g, a1, {c2, var(i)}, {B, arg(1)});
            need_wiring(g, a2, {c1, var(i)}, {B, arg(2)});
            g.erase_arrow(a1);
            g.erase_arrow(a2);
            g.set_tail(arrow_at(idx, B, out0()), PortRef{N, var(i)});
            g.erase_node(B);
        }
    }
    g.set_tail(arrow_at(idx, c1, out0()), PortRef{G, var(1)});
    g.set_tail(arrow_at(idx, c2, out0()), PortRef{G, var(2)});
    ArrowId spine = g.add_arrow(PortRef{N, out0()}, PortRef{G, in0()});
    g.erase_node(c1);
    g.erase_node(c2);

    Match inv;
    inv.kind = m.kind;
    inv.nodes["node"] = N;
    inv.nodes["fanout"] = G;
    inv.arrows["spine"] = spine;
    inv.arity_a = n;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_prune_zp(ZGraph g, const Match& m) {
    NodeId Z = m.node("node"), t = m.node("term");
    NodeKind kz = need_kind(g, Z, Kind::HalfZipperPlus);
    need_kind(g, t, Kind::Termination);
    std::uint32_t n = kz.arity;
    ArrowId trigger = m.arrow("trigger");
    need_wiring(g, trigger, {Z, out0()}, {t, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, Z);
    g.erase_arrow(trigger);

    Match inv;
    inv.kind = MoveKind::PruneZP;
    inv.reversed = true;
    inv.arity_a = n;
    std::vector<Port> ins = dist_in_ports(Kind::HalfZipperPlus, n);
    for (std::size_t i = 0; i < ins.size(); ++i) {
        NodeId cap = g.add_node(termination());
        g.set_head(arrow_at(idx, Z, ins[i]), PortRef{cap, in0()});
        inv.nodes["cap" + std::to_string(i)] = cap;
    }
    g.erase_node(Z);
    g.erase_node(t);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unprune_zp(ZGraph g, const Match& m) {
    std::uint32_t n = m.arity_a;
    NodeId Z = g.add_node(zp(n));
    NodeId t = g.add_node(termination());
    PortIndex idx(g);
    std::vector<Port> ins = dist_in_ports(Kind::HalfZipperPlus, n);
    for (std::size_t i = 0; i < ins.size(); ++i) {
        NodeId cap = m.node("cap" + std::to_string(i));
        need_kind(g, cap, Kind::Termination);
        g.set_head(arrow_at(idx, cap, in0()), PortRef{Z, ins[i]});
        g.erase_node(cap);
    }
    ArrowId trigger = g.add_arrow(PortRef{Z, out0()}, PortRef{t, in0()});

    Match inv;
    inv.kind = MoveKind::PruneZP;
    inv.nodes["node"] = Z;
    inv.nodes["term"] = t;
    inv.arrows["trigger"] = trigger;
    inv.arity_a = n;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_prune_zm(ZGraph g, const Match& m) {
    NodeId M = m.node("node"), t = m.node("term");
    NodeKind km = need_kind(g, M, Kind::HalfZipperMinus);
    need_kind(g, t, Kind::Termination);
    std::uint32_t n = km.arity;
    ArrowId trigger = m.arrow("trigger");
    need_wiring(g, trigger, {M, out0()}, {t, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, M);
    g.erase_arrow(trigger);

    Match inv;
    inv.kind = MoveKind::PruneZM;
    inv.reversed = true;
    inv.arity_a = n;

    ArrowId a0 = arrow_at(idx, M, in0());
    const Arrow& ar0 = g.arrow(a0);
    std::uint32_t internal_var = 0;
    if (!is_free(ar0.tail) && port_ref(ar0.tail).node == M) {
        internal_var = port_ref(ar0.tail).port.index;  // a self arrow closes into a loop
        g.erase_arrow(a0);
        g.add_loops(1);
    } else {
        NodeId cap = g.add_node(termination());
        g.set_head(a0, PortRef{cap, in0()});
        inv.nodes["cap0"] = cap;
    }
    inv.extra.push_back(static_cast<int>(internal_var));
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (i == internal_var) continue;
        ArrowId v = arrow_at(idx, M, var(i));
        g.set_tail(v, FreeEnd{g.fresh_label("v")});
        inv.arrows["v" + std::to_string(i)] = v;
    }
    g.erase_node(M);
    g.erase_node(t);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unprune_zm(ZGraph g, const Match& m) {
    std::uint32_t n = m.arity_a;
    need(!m.extra.empty(), "missing internal-var record");
    std::uint32_t internal_var = static_cast<std::uint32_t>(m.extra[0]);
    NodeId M = g.add_node(zm(n));
    NodeId t = g.add_node(termination());
    if (internal_var > 0) {
        need(g.loop_count() >= 1, "no loop to reopen");
        g.set_loop_count(g.loop_count() - 1);
        g.add_arrow(PortRef{M, var(internal_var)}, PortRef{M, in0()});
    } else {
        NodeId cap = m.node("cap0");
        need_kind(g, cap, Kind::Termination);
        PortIndex idx(g);
        g.set_head(arrow_at(idx, cap, in0()), PortRef{M, in0()});
        g.erase_node(cap);
    }
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (i == internal_var) continue;
        ArrowId v = m.arrow("v" + std::to_string(i));
        need(g.has_arrow(v) && is_free(g.arrow(v).tail), "freed variable arrow changed");
        g.set_tail(v, PortRef{M, var(i)});
    }
    ArrowId trigger = g.add_arrow(PortRef{M, out0()}, PortRef{t, in0()});

    Match inv;
    inv.kind = MoveKind::PruneZM;
    inv.nodes["node"] = M;
    inv.nodes["term"] = t;
    inv.arrows["trigger"] = trigger;
    inv.arity_a = n;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_prune_fo(ZGraph g, const Match& m) {
    NodeId G = m.node("fanout"), t = m.node("term");
    need_kind(g, G, Kind::FanOut);
    need_kind(g, t, Kind::Termination);
    need(!m.extra.empty(), "missing pruned-out record");
    std::uint32_t k = static_cast<std::uint32_t>(m.extra[0]);
    need(k == 1 || k == 2, "bad fan-out port");
    ArrowId trigger = m.arrow("trigger");
    need_wiring(g, trigger, {G, var(k)}, {t, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, G);
    g.erase_arrow(trigger);
    auto chains = fuse(g, {{{G, in0()}, {G, var(3 - k)}}});
    g.erase_node(G);
    g.erase_node(t);

    Match inv;
    inv.kind = MoveKind::PruneFO;
    inv.reversed = true;
    inv.extra.push_back(static_cast<int>(k));
    inv.chains = std::move(chains);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unprune_fo(ZGraph g, const Match& m) {
    need(!m.extra.empty(), "missing pruned-out record");
    std::uint32_t k = static_cast<std::uint32_t>(m.extra[0]);
    need(k == 1 || k == 2, "bad fan-out port");
    NodeId G = g.add_node(fan_out());
    NodeId t = g.add_node(termination());
    unfuse(g, m.chains, {{{G, in0()}, {G, var(3 - k)}}});
    ArrowId trigger = g.add_arrow(PortRef{G, var(k)}, PortRef{t, in0()});

    Match inv;
    inv.kind = MoveKind::PruneFO;
    inv.nodes["fanout"] = G;
    inv.nodes["term"] = t;
    inv.arrows["trigger"] = trigger;
    inv.extra.push_back(static_cast<int>(k));
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_prune_fi(ZGraph g, const Match& m) {
    NodeId F = m.node("fanin"), t = m.node("term");
    need_kind(g, F, Kind::FanIn);
    need_kind(g, t, Kind::Termination);
    ArrowId trigger = m.arrow("trigger");
    need_wiring(g, trigger, {F, out0()}, {t, in0()});
    PortIndex idx(g);
    need_occupied(g, idx, F);
    g.erase_arrow(trigger);

    Match inv;
    inv.kind = MoveKind::PruneFI;
    inv.reversed = true;
    for (std::uint32_t i = 1; i <= 2; ++i) {
        NodeId cap = g.add_node(termination());
        g.set_head(arrow_at(idx, F, arg(i)), PortRef{cap, in0()});
        inv.nodes["cap" + std::to_string(i)] = cap;
    }
    g.erase_node(F);
    g.erase_node(t);
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unprune_fi(ZGraph g, const Match& m) {
    NodeId F = g.add_node(fan_in());
    NodeId t = g.add_node(termination());
    PortIndex idx(g);
    for (std::uint32_t i = 1; i <= 2; ++i) {
        NodeId cap = m.node("cap" + std::to_string(i));
        need_kind(g, cap, Kind::Termination);
        g.set_head(arrow_at(idx, cap, in0()), PortRef{F, arg(i)});
        g.erase_node(cap);
    }
    ArrowId trigger = g.add_arrow(PortRef{F, out0()}, PortRef{t, in0()});

    Match inv;
    inv.kind = MoveKind::PruneFI;
    inv.nodes["fanin"] = F;
    inv.nodes["term"] = t;
    inv.arrows["trigger"] = trigger;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_prune_arrow(ZGraph g, const Match& m) {
    NodeId t = m.node("term");
    need_kind(g, t, Kind::Termination);
    ArrowId a = m.arrow("arrow");
    need(g.has_arrow(a), "arrow missing");
    const Arrow& ar = g.arrow(a);
    need(is_free(ar.tail) && !is_free(ar.head) && port_ref(ar.head) == PortRef{t, in0()},
         "not a free-tailed arrow into the termination node");
    g.erase_arrow(a);
    g.erase_node(t);
    g.add_loops(1);

    Match inv;
    inv.kind = MoveKind::PruneArrowT;
    inv.reversed = true;
    return {std::move(g), std::move(inv)};
}

ApplyResult apply_unprune_arrow(ZGraph g, const Match& m) {
    need(g.loop_count() >= 1, "no loop to reopen");
    g.set_loop_count(g.loop_count() - 1);
    NodeId t = g.add_node(termination());
    ArrowId a = g.add_arrow(FreeEnd{g.fresh_label("p")}, PortRef{t, in0()});

    Match inv;
    inv.kind = MoveKind::PruneArrowT;
    inv.nodes["term"] = t;
    inv.arrows["arrow"] = a;
    return {std::move(g), std::move(inv)};
}

}  // namespace

ApplyResult apply_move(const ZGraph& g, const Match& m) {
    switch (m.kind) {
        case MoveKind::Click: return m.reversed ? apply_unclick(g, m) : apply_click(g, m);
        case MoveKind::Zip: return m.reversed ? apply_unzip(g, m) : apply_zip(g, m);
        case MoveKind::TowerMerge: return apply_tower_merge(g, m);
        case MoveKind::TowerSplit: return apply_tower_split(g, m);
        case MoveKind::CoComm: return apply_cocomm(g, m);
        case MoveKind::CoAssoc: return apply_coassoc(g, m);
        case MoveKind::FanInCross: return m.reversed ? apply_unfanin(g, m) : apply_fanin(g, m);
        case MoveKind::DistPlus:
        case MoveKind::DistMinus: return m.reversed ? apply_undist(g, m) : apply_dist(g, m);
        case MoveKind::PruneZP: return m.reversed ? apply_unprune_zp(g, m) : apply_prune_zp(g, m);
        case MoveKind::PruneZM: return m.reversed ? apply_unprune_zm(g, m) : apply_prune_zm(g, m);
        case MoveKind::PruneFO: return m.reversed ? apply_unprune_fo(g, m) : apply_prune_fo(g, m);
        case MoveKind::PruneFI: return m.reversed ? apply_unprune_fi(g, m) : apply_prune_fi(g, m);
        case MoveKind::PruneArrowT:
            return m.reversed ? apply_unprune_arrow(g, m) : apply_prune_arrow(g, m);
    }
    throw PatternMismatch("unknown move kind");
}

ZGraph apply(const ZGraph& g, const Match& m) { return apply_move(g, m).graph; }

ZGraph reverse(const ZGraph& g, const Match& reverse_match) {
    return apply_move(g, reverse_match).graph;
}

// --- enumeration -----------------------------------------------------------

namespace {

bool occupied(const ZGraph& g, const PortIndex& idx, NodeId n) {
    for (Port p : ports_of(g.kind(n)))
        if (!idx.at(n, p)) return false;
    return true;
}

}  // namespace

std::vector<Match> enumerate_matches(const ZGraph& g, MoveKind kind) {
    std::vector<Match> out;
    PortIndex idx(g);
    auto occ = [&](NodeId n) { return occupied(g, idx, n); };

    auto spine_matches = [&](Kind tail_kind, Kind head_kind, auto make) {
        for (const auto& [aid, a] : g.arrows()) {
            if (is_free(a.tail) || is_free(a.head)) continue;
            const PortRef& t = port_ref(a.tail);
            const PortRef& h = port_ref(a.head);
            if (t.port == out0() && h.port == in0() && g.kind(t.node).kind == tail_kind &&
                g.kind(h.node).kind == head_kind && occ(t.node) && occ(h.node))
                make(aid, t.node, h.node);
        }
    };

    switch (kind) {
        case MoveKind::Click:
            spine_matches(Kind::HalfZipperMinus, Kind::HalfZipperPlus, [&](ArrowId aid, NodeId M, NodeId P) {
                Match m;
                m.kind = MoveKind::Click;
                m.nodes["minus"] = M;
                m.nodes["plus"] = P;
                m.arrows["spine"] = aid;
                m.arity_a = g.kind(M).arity;
                m.arity_b = g.kind(P).arity;
                m.click_case = m.arity_a == m.arity_b
                                   ? ClickCase::Equal
                                   : (m.arity_b > m.arity_a ? ClickCase::PlusResidual
                                                            : ClickCase::MinusResidual);
                out.push_back(std::move(m));
            });
            break;
        case MoveKind::Zip:
            for (const auto& [nid, k] : g.nodes()) {
                if (k.kind != Kind::Zipper || !occ(nid)) continue;
                Match m;
                m.kind = MoveKind::Zip;
                m.nodes["zipper"] = nid;
                m.arity_a = k.arity;
                out.push_back(std::move(m));
            }
            break;
        case MoveKind::TowerMerge:
            for (Kind side : {Kind::HalfZipperMinus, Kind::HalfZipperPlus}) {
                spine_matches(side, side, [&](ArrowId aid, NodeId src, NodeId dst) {
                    Match m;
                    m.kind = MoveKind::TowerMerge;
                    m.nodes["src"] = src;
                    m.nodes["dst"] = dst;
                    m.arrows["spine"] = aid;
                    m.arity_a = g.kind(src).arity;
                    m.arity_b = g.kind(dst).arity;
                    out.push_back(std::move(m));
                });
            }
            break;
        case MoveKind::TowerSplit:
            for (const auto& [nid, k] : g.nodes()) {
                if ((k.kind != Kind::HalfZipperMinus && k.kind != Kind::HalfZipperPlus) ||
                    k.arity < 2 || !occ(nid))
                    continue;
                for (std::uint32_t p = 1; p <= k.arity - 1; ++p) {
                    Match m;
                    m.kind = MoveKind::TowerSplit;
                    m.nodes["node"] = nid;
                    m.arity_a = k.arity;
                    m.split_point = p;
                    out.push_back(std::move(m));
                }
            }
            break;
        case MoveKind::CoComm:
            for (const auto& [nid, k] : g.nodes()) {
                if (k.kind != Kind::FanOut || !occ(nid)) continue;
                Match m;
                m.kind = MoveKind::CoComm;
                m.nodes["fanout"] = nid;
                out.push_back(std::move(m));
            }
            break;
        case MoveKind::CoAssoc:
            for (const auto& [aid, a] : g.arrows()) {
                if (is_free(a.tail) || is_free(a.head)) continue;
                const PortRef& t = port_ref(a.tail);
                const PortRef& h = port_ref(a.head);
                if (t.port == var(1) && h.port == in0() && g.kind(t.node).kind == Kind::FanOut &&
                    g.kind(h.node).kind == Kind::FanOut && occ(t.node) && occ(h.node)) {
                    Match m;
                    m.kind = MoveKind::CoAssoc;
                    m.nodes["top"] = t.node;
                    m.nodes["bottom"] = h.node;
                    m.arrows["spine"] = aid;
                    out.push_back(std::move(m));
                }
            }
            break;
        case MoveKind::FanInCross:
            spine_matches(Kind::FanIn, Kind::FanOut, [&](ArrowId aid, NodeId F, NodeId G) {
                Match m;
                m.kind = MoveKind::FanInCross;
                m.nodes["fanin"] = F;
                m.nodes["fanout"] = G;
                m.arrows["spine"] = aid;
                out.push_back(std::move(m));
            });
            break;
        case MoveKind::DistPlus:
        case MoveKind::DistMinus: {
            Kind nk = kind == MoveKind::DistPlus ? Kind::HalfZipperPlus : Kind::HalfZipperMinus;
            spine_matches(nk, Kind::FanOut, [&](ArrowId aid, NodeId N, NodeId G) {
                Match m;
                m.kind = kind;
                m.nodes["node"] = N;
                m.nodes["fanout"] = G;
                m.arrows["spine"] = aid;
                m.arity_a = g.kind(N).arity;
                out.push_back(std::move(m));
            });
            break;
        }
        case MoveKind::PruneZP:
        case MoveKind::PruneZM: {
            Kind nk = kind == MoveKind::PruneZP ? Kind::HalfZipperPlus : Kind::HalfZipperMinus;
            spine_matches(nk, Kind::Termination, [&](ArrowId aid, NodeId N, NodeId t) {
                Match m;
                m.kind = kind;
                m.nodes["node"] = N;
                m.nodes["term"] = t;
                m.arrows["trigger"] = aid;
                m.arity_a = g.kind(N).arity;
                out.push_back(std::move(m));
            });
            break;
        }
        case MoveKind::PruneFO:
            for (const auto& [aid, a] : g.arrows()) {
                if (is_free(a.tail) || is_free(a.head)) continue;
                const PortRef& t = port_ref(a.tail);
                const PortRef& h = port_ref(a.head);
                if (t.port.slot == Slot::Var && h.port == in0() &&
                    g.kind(t.node).kind == Kind::FanOut &&
                    g.kind(h.node).kind == Kind::Termination && occ(t.node)) {
                    Match m;
                    m.kind = MoveKind::PruneFO;
                    m.nodes["fanout"] = t.node;
                    m.nodes["term"] = h.node;
                    m.arrows["trigger"] = aid;
                    m.extra.push_back(static_cast<int>(t.port.index));
                    out.push_back(std::move(m));
                }
            }
            break;
        case MoveKind::PruneFI:
            spine_matches(Kind::FanIn, Kind::Termination, [&](ArrowId aid, NodeId F, NodeId t) {
                Match m;
                m.kind = MoveKind::PruneFI;
                m.nodes["fanin"] = F;
                m.nodes["term"] = t;
                m.arrows["trigger"] = aid;
                out.push_back(std::move(m));
            });
            break;
        case MoveKind::PruneArrowT:
            for (const auto& [aid, a] : g.arrows()) {
                if (!is_free(a.tail) || is_free(a.head)) continue;
                const PortRef& h = port_ref(a.head);
                if (g.kind(h.node).kind == Kind::Termination) {
                    Match m;
                    m.kind = MoveKind::PruneArrowT;
                    m.nodes["term"] = h.node;
                    m.arrows["arrow"] = aid;
                    out.push_back(std::move(m));
                }
            }
            break;
    }
    return out;
}

std::vector<Match> enumerate_reverse_matches(const ZGraph& g, MoveKind kind) {
    std::vector<Match> out;
    PortIndex idx(g);
    auto occ = [&](NodeId n) { return occupied(g, idx, n); };

    if (kind == MoveKind::Click) {
        for (const auto& [nid, k] : g.nodes()) {
            if (k.kind != Kind::Zipper || !occ(nid)) continue;
            std::uint32_t q = k.arity;
            {
                Match m;
                m.kind = MoveKind::Click;
                m.reversed = true;
                m.click_case = ClickCase::Equal;
                m.nodes["zipper"] = nid;
                m.arity_a = q;
                m.arity_b = q;
                out.push_back(std::move(m));
            }
            if (auto aid = idx.at(nid, out0())) {
                const Arrow& a = g.arrow(*aid);
                if (!is_free(a.head) && port_ref(a.head).port == in0()) {
                    NodeId r = port_ref(a.head).node;
                    if (g.kind(r).kind == Kind::HalfZipperPlus && occ(r)) {
                        Match m;
                        m.kind = MoveKind::Click;
                        m.reversed = true;
                        m.click_case = ClickCase::PlusResidual;
                        m.nodes["zipper"] = nid;
                        m.nodes["residual"] = r;
                        m.arity_a = q;
                        m.arity_b = q + g.kind(r).arity;
                        out.push_back(std::move(m));
                    }
                }
            }
            if (auto aid = idx.at(nid, in0())) {
                const Arrow& a = g.arrow(*aid);
                if (!is_free(a.tail) && port_ref(a.tail).port == out0()) {
                    NodeId r = port_ref(a.tail).node;
                    if (g.kind(r).kind == Kind::HalfZipperMinus && occ(r)) {
                        Match m;
                        m.kind = MoveKind::Click;
                        m.reversed = true;
                        m.click_case = ClickCase::MinusResidual;
                        m.nodes["zipper"] = nid;
                        m.nodes["residual"] = r;
                        m.arity_a = q + g.kind(r).arity;
                        m.arity_b = q;
                        out.push_back(std::move(m));
                    }
                }
            }
        }
    } else if (kind == MoveKind::CoAssoc) {
        for (const auto& [aid, a] : g.arrows()) {
            if (is_free(a.tail) || is_free(a.head)) continue;
            const PortRef& t = port_ref(a.tail);
            const PortRef& h = port_ref(a.head);
            if (t.port == var(2) && h.port == in0() && g.kind(t.node).kind == Kind::FanOut &&
                g.kind(h.node).kind == Kind::FanOut && occ(t.node) && occ(h.node)) {
                Match m;
                m.kind = MoveKind::CoAssoc;
                m.reversed = true;
                m.nodes["top"] = t.node;
                m.nodes["bottom"] = h.node;
                m.arrows["spine"] = aid;
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

}  // namespace zipper
