#include "zipper/knots.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace zipper {

ArcId TangleDiagram::add_arc(ArcEnd from, ArcEnd to, bool is_virtual) {
    ArcId id = next_arc++;
    arcs.emplace(id, Arc{std::move(from), std::move(to), is_virtual});
    if (arcs.at(id).from.attached())
        crossings[*arcs.at(id).from.crossing].ends[arcs.at(id).from.end] = id;
    if (arcs.at(id).to.attached())
        crossings[*arcs.at(id).to.crossing].ends[arcs.at(id).to.end] = id;
    return id;
}

std::vector<std::string> TangleDiagram::validate() const {
    std::vector<std::string> out;
    for (CrossingId c = 0; c < crossings.size(); ++c) {
        for (CrossEnd e : {CrossEnd::OverIn, CrossEnd::OverOut, CrossEnd::UnderIn, CrossEnd::UnderOut})
            if (!crossings[c].ends.count(e))
                out.push_back("crossing " + std::to_string(c) + " has an unattached end");
    }
    for (const auto& [aid, a] : arcs) {
        auto check = [&](const ArcEnd& end, bool is_to) {
            if (!end.attached()) return;
            bool incoming = end.end == CrossEnd::OverIn || end.end == CrossEnd::UnderIn;
            if (incoming != is_to)
                out.push_back("arc " + std::to_string(aid) + " orientation disagrees with crossing end");
            auto it = crossings[*end.crossing].ends.find(end.end);
            if (it == crossings[*end.crossing].ends.end() || it->second != aid)
                out.push_back("arc " + std::to_string(aid) + " not registered at its crossing");
        };
        check(a.from, false);
        check(a.to, true);
    }
    return out;
}

namespace {

ArcEnd at(CrossingId c, CrossEnd e) { return {c, e, ""}; }
ArcEnd loose(std::string label) { return {std::nullopt, CrossEnd::OverIn, std::move(label)}; }

struct EncodeState {
    TangleDiagram d;
    // Where each graph port attaches in the diagram.
    std::map<PortRef, ArcEnd> port_end;
    // Crossing chains per node: minus levels and plus levels, index 1..n.
    std::map<NodeId, std::vector<CrossingId>> minus_chain, plus_chain;
    std::size_t free_counter = 0;

    std::string fresh() { return "k" + std::to_string(free_counter++); }

    CrossingId add_crossing(int sign) {
        d.crossings.push_back({sign, {}});
        return static_cast<CrossingId>(d.crossings.size() - 1);
    }

    // n negative crossings, spine on the over strand, entering at level n and
    // leaving at level 1 (the outermost).
    std::vector<CrossingId> minus_levels(NodeId node, std::uint32_t n) {
        std::vector<CrossingId> xs(n + 1, 0);
        for (std::uint32_t i = 1; i <= n; ++i) xs[i] = add_crossing(-1);
        for (std::uint32_t i = n; i >= 2; --i)
            d.add_arc(at(xs[i], CrossEnd::OverOut), at(xs[i - 1], CrossEnd::OverIn), false);
        port_end[{node, in0()}] = at(xs[n], CrossEnd::OverIn);
        port_end[{node, out0()}] = at(xs[1], CrossEnd::OverOut);
        for (std::uint32_t i = 1; i <= n; ++i)
            port_end[{node, var(i)}] = at(xs[i], CrossEnd::UnderOut);
        return xs;
    }

    // m positive crossings, spine on the under strand, entering at level 1.
    std::vector<CrossingId> plus_levels(NodeId node, std::uint32_t m) {
        std::vector<CrossingId> ys(m + 1, 0);
        for (std::uint32_t i = 1; i <= m; ++i) ys[i] = add_crossing(+1);
        for (std::uint32_t i = 1; i + 1 <= m; ++i)
            d.add_arc(at(ys[i], CrossEnd::UnderOut), at(ys[i + 1], CrossEnd::UnderIn), false);
        port_end[{node, in0()}] = at(ys[1], CrossEnd::UnderIn);
        port_end[{node, out0()}] = at(ys[m], CrossEnd::UnderOut);
        for (std::uint32_t i = 1; i <= m; ++i)
            port_end[{node, arg(i)}] = at(ys[i], CrossEnd::OverIn);
        return ys;
    }
};

TangleDiagram encode_impl(const ZGraph& g, bool extended) {
    EncodeState st;
    for (const auto& [nid, k] : g.nodes()) {
        switch (k.kind) {
            case Kind::HalfZipperMinus: st.minus_chain[nid] = st.minus_levels(nid, k.arity); break;
            case Kind::HalfZipperPlus: st.plus_chain[nid] = st.plus_levels(nid, k.arity); break;
            case Kind::Zipper: {
                auto xs = st.minus_levels(nid, k.arity);
                // plus_levels would clobber the In0/Out0 entries; wire the plus
                // chain by hand and fix the boundary map afterwards.
                std::vector<CrossingId> ys(k.arity + 1, 0);
                for (std::uint32_t i = 1; i <= k.arity; ++i) ys[i] = st.add_crossing(+1);
                for (std::uint32_t i = 1; i + 1 <= k.arity; ++i)
                    st.d.add_arc(at(ys[i], CrossEnd::UnderOut), at(ys[i + 1], CrossEnd::UnderIn), false);
                for (std::uint32_t i = 1; i <= k.arity; ++i)
                    st.port_end[{nid, arg(i)}] = at(ys[i], CrossEnd::OverIn);
                // The click already happened: the spine and every closure arc
                // are real.
                st.d.add_arc(at(xs[1], CrossEnd::OverOut), at(ys[1], CrossEnd::UnderIn), false);
                for (std::uint32_t i = 1; i <= k.arity; ++i)
                    st.d.add_arc(at(ys[i], CrossEnd::OverOut), at(xs[i], CrossEnd::UnderIn), false);
                st.port_end[{nid, out0()}] = at(ys[k.arity], CrossEnd::UnderOut);
                // In0 stays at xs[arity].OverIn from minus_levels.
                st.minus_chain[nid] = xs;
                st.plus_chain[nid] = ys;
                break;
            }
            case Kind::FanOut:
            case Kind::FanIn:
            case Kind::Termination:
                if (!extended)
                    throw UnsupportedNode("encode: node kind " + kind_name(k) +
                                          " has no knot drawing");
                for (Port p : ports_of(k))
                    st.port_end[{nid, p}] =
                        loose(kind_name(k) + std::to_string(nid) + ":" + port_name(p));
                break;
        }
    }

    auto end_of = [&](const Endpoint& e) -> ArcEnd {
        if (is_free(e)) return loose(std::get<FreeEnd>(e).label);
        return st.port_end.at(port_ref(e));
    };
    for (const auto& [aid, a] : g.arrows()) st.d.add_arc(end_of(a.tail), end_of(a.head), false);

    // Matched closures: a clickable spine pairs level i of the minus chain
    // with level i of the plus chain, drawn as virtual arcs.
    for (const auto& [aid, a] : g.arrows()) {
        if (is_free(a.tail) || is_free(a.head)) continue;
        const PortRef& t = port_ref(a.tail);
        const PortRef& h = port_ref(a.head);
        if (!(t.port == out0()) || !(h.port == in0())) continue;
        if (g.kind(t.node).kind != Kind::HalfZipperMinus ||
            g.kind(h.node).kind != Kind::HalfZipperPlus)
            continue;
        std::uint32_t n = g.kind(t.node).arity, m = g.kind(h.node).arity;
        const auto& xs = st.minus_chain.at(t.node);
        const auto& ys = st.plus_chain.at(h.node);
        for (std::uint32_t i = 1; i <= std::min(n, m); ++i)
            st.d.add_arc(at(ys[i], CrossEnd::OverOut), at(xs[i], CrossEnd::UnderIn), true);
    }

    // Anything still open closes virtually to a loose end.
    for (CrossingId c = 0; c < st.d.crossings.size(); ++c) {
        for (CrossEnd e : {CrossEnd::OverIn, CrossEnd::OverOut, CrossEnd::UnderIn, CrossEnd::UnderOut}) {
            if (st.d.crossings[c].ends.count(e)) continue;
            bool incoming = e == CrossEnd::OverIn || e == CrossEnd::UnderIn;
            if (incoming)
                st.d.add_arc(loose(st.fresh()), at(c, e), true);
            else
                st.d.add_arc(at(c, e), loose(st.fresh()), true);
        }
    }
    return std::move(st.d);
}

}  // namespace

TangleDiagram encode(const ZGraph& g) { return encode_impl(g, false); }
TangleDiagram encode_extended(const ZGraph& g) { return encode_impl(g, true); }

std::vector<std::vector<ArcId>> click_sites(const TangleDiagram& d) {
    // Chains glue along over-over, under-under and minus-over-out ->
    // plus-under-in (spine) real arcs; each glue class with matched virtual
    // closures is one site.
    std::vector<CrossingId> parent(d.crossings.size());
    for (CrossingId c = 0; c < parent.size(); ++c) parent[c] = c;
    std::function<CrossingId(CrossingId)> find = [&](CrossingId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [aid, a] : d.arcs) {
        if (a.is_virtual || !a.from.attached() || !a.to.attached()) continue;
        int sf = d.crossings[*a.from.crossing].sign;
        int stn = d.crossings[*a.to.crossing].sign;
        bool chain_glue = (a.from.end == CrossEnd::OverOut && a.to.end == CrossEnd::OverIn &&
                           sf == -1 && stn == -1) ||
                          (a.from.end == CrossEnd::UnderOut && a.to.end == CrossEnd::UnderIn &&
                           sf == +1 && stn == +1) ||
                          (a.from.end == CrossEnd::OverOut && a.to.end == CrossEnd::UnderIn &&
                           sf == -1 && stn == +1);
        if (chain_glue) parent[find(*a.from.crossing)] = find(*a.to.crossing);
    }
    std::map<CrossingId, std::vector<ArcId>> groups;
    for (const auto& [aid, a] : d.arcs) {
        if (!a.is_virtual || !a.from.attached() || !a.to.attached()) continue;
        if (find(*a.from.crossing) != find(*a.to.crossing)) continue;
        groups[find(*a.from.crossing)].push_back(aid);
    }
    std::vector<std::vector<ArcId>> out;
    for (auto& [root, arcs] : groups) out.push_back(std::move(arcs));
    return out;
}

TangleDiagram realize_click(const TangleDiagram& d, const std::vector<ArcId>& site) {
    if (site.empty()) throw BadSite("realize_click: empty site");
    TangleDiagram out = d;
    for (ArcId aid : site) {
        auto it = out.arcs.find(aid);
        if (it == out.arcs.end()) throw BadSite("realize_click: unknown arc");
        if (!it->second.is_virtual) throw BadSite("realize_click: arc already real");
        if (!it->second.from.attached() || !it->second.to.attached())
            throw BadSite("realize_click: arc is not a matched closure");
        it->second.is_virtual = false;
    }
    return out;
}

namespace {

std::optional<ArcId> arc_between(const TangleDiagram& d, CrossingId from, CrossEnd fe,
                                 CrossingId to, CrossEnd te, bool want_real) {
    auto it = d.crossings[from].ends.find(fe);
    if (it == d.crossings[from].ends.end()) return std::nullopt;
    const Arc& a = d.arcs.at(it->second);
    if (want_real && a.is_virtual) return std::nullopt;
    if (!a.from.attached() || !a.to.attached()) return std::nullopt;
    if (*a.from.crossing != from || a.from.end != fe) return std::nullopt;
    if (*a.to.crossing != to || a.to.end != te) return std::nullopt;
    return it->second;
}

}  // namespace

std::vector<std::pair<CrossingId, CrossingId>> r2_sites(const TangleDiagram& d) {
    std::vector<std::pair<CrossingId, CrossingId>> out;
    for (CrossingId i = 0; i < d.crossings.size(); ++i)
        for (CrossingId j = i + 1; j < d.crossings.size(); ++j) {
            if (d.crossings[i].sign == d.crossings[j].sign) continue;
            if (arc_between(d, i, CrossEnd::OverOut, j, CrossEnd::UnderIn, true) &&
                arc_between(d, j, CrossEnd::OverOut, i, CrossEnd::UnderIn, true))
                out.emplace_back(i, j);
        }
    return out;
}

TangleDiagram apply_r2(const TangleDiagram& d, std::pair<CrossingId, CrossingId> site) {
    auto [c1, c2] = site;
    if (c1 >= d.crossings.size() || c2 >= d.crossings.size() || c1 == c2)
        throw BadSite("apply_r2: bad crossing pair");
    if (d.crossings[c1].sign == d.crossings[c2].sign)
        throw BadSite("apply_r2: crossings have the same sign");
    auto m1 = arc_between(d, c1, CrossEnd::OverOut, c2, CrossEnd::UnderIn, true);
    auto m2 = arc_between(d, c2, CrossEnd::OverOut, c1, CrossEnd::UnderIn, true);
    if (!m1 || !m2) throw BadSite("apply_r2: crossings do not share two parallel real arcs");

    ArcId u1 = d.crossings[c1].ends.at(CrossEnd::OverIn);
    ArcId v1 = d.crossings[c2].ends.at(CrossEnd::UnderOut);
    ArcId u2 = d.crossings[c2].ends.at(CrossEnd::OverIn);
    ArcId v2 = d.crossings[c1].ends.at(CrossEnd::UnderOut);

    TangleDiagram out;
    // Crossings survive minus the pair; remap ids.
    std::map<CrossingId, CrossingId> cmap;
    for (CrossingId c = 0; c < d.crossings.size(); ++c) {
        if (c == c1 || c == c2) continue;
        cmap[c] = static_cast<CrossingId>(out.crossings.size());
        out.crossings.push_back({d.crossings[c].sign, {}});
    }
    auto remap = [&](ArcEnd e) -> ArcEnd {
        if (!e.attached()) return e;
        return {cmap.at(*e.crossing), e.end, ""};
    };
    std::set<ArcId> dropped{*m1, *m2, u1, v1, u2, v2};
    std::size_t circles = 0;
    auto fused = [&](ArcId uin, ArcId vout) {
        const Arc& u = d.arcs.at(uin);
        const Arc& v = d.arcs.at(vout);
        if (uin == vout) {  // the strand closed on itself
            std::string l = "o" + std::to_string(circles++);
            out.add_arc(loose(l), loose(l), u.is_virtual);
            return;
        }
        out.add_arc(remap(u.from), remap(v.to), u.is_virtual || v.is_virtual);
    };
    fused(u1, v1);
    fused(u2, v2);
    for (const auto& [aid, a] : d.arcs) {
        if (dropped.count(aid)) continue;
        out.add_arc(remap(a.from), remap(a.to), a.is_virtual);
    }
    return out;
}

namespace {

struct ArcShape {
    bool is_virtual;
    bool from_free, to_free;
    bool circle;
};

ArcShape shape_of(const Arc& a) {
    bool circle = !a.from.attached() && !a.to.attached() && a.from.label == a.to.label;
    return {a.is_virtual, !a.from.attached(), !a.to.attached(), circle};
}

bool shape_eq(const ArcShape& a, const ArcShape& b) {
    return a.is_virtual == b.is_virtual && a.from_free == b.from_free && a.to_free == b.to_free &&
           a.circle == b.circle;
}

bool crossings_compatible(const TangleDiagram& a, const TangleDiagram& b,
                          const std::vector<std::optional<CrossingId>>& map, CrossingId ca,
                          CrossingId cb) {
    if (a.crossings[ca].sign != b.crossings[cb].sign) return false;
    for (CrossEnd e : {CrossEnd::OverIn, CrossEnd::OverOut, CrossEnd::UnderIn, CrossEnd::UnderOut}) {
        auto ia = a.crossings[ca].ends.find(e);
        auto ib = b.crossings[cb].ends.find(e);
        if ((ia == a.crossings[ca].ends.end()) != (ib == b.crossings[cb].ends.end())) return false;
        if (ia == a.crossings[ca].ends.end()) continue;
        const Arc& aa = a.arcs.at(ia->second);
        const Arc& ab = b.arcs.at(ib->second);
        if (aa.is_virtual != ab.is_virtual) return false;
        const ArcEnd& other_a = (aa.from.attached() && *aa.from.crossing == ca && aa.from.end == e)
                                    ? aa.to
                                    : aa.from;
        const ArcEnd& other_b = (ab.from.attached() && *ab.from.crossing == cb && ab.from.end == e)
                                    ? ab.to
                                    : ab.from;
        if (other_a.attached() != other_b.attached()) return false;
        if (other_a.attached()) {
            if (other_a.end != other_b.end) return false;
            auto mapped = map[*other_a.crossing];
            if (mapped && *mapped != *other_b.crossing) return false;
        }
    }
    return true;
}

bool iso_search(const TangleDiagram& a, const TangleDiagram& b,
                std::vector<std::optional<CrossingId>>& map, std::vector<bool>& used,
                CrossingId next) {
    if (next == a.crossings.size()) return true;
    for (CrossingId cb = 0; cb < b.crossings.size(); ++cb) {
        if (used[cb]) continue;
        map[next] = cb;
        if (crossings_compatible(a, b, map, next, cb)) {
            used[cb] = true;
            if (iso_search(a, b, map, used, next + 1)) return true;
            used[cb] = false;
        }
        map[next] = std::nullopt;
    }
    return false;
}

}  // namespace

bool diagram_iso(const TangleDiagram& a, const TangleDiagram& b) {
    if (a.crossings.size() != b.crossings.size() || a.arcs.size() != b.arcs.size()) return false;
    // Arcs not touching crossings are compared as multisets of shapes.
    std::vector<ArcShape> fa, fb;
    for (const auto& [aid, arc] : a.arcs)
        if (!arc.from.attached() && !arc.to.attached()) fa.push_back(shape_of(arc));
    for (const auto& [aid, arc] : b.arcs)
        if (!arc.from.attached() && !arc.to.attached()) fb.push_back(shape_of(arc));
    if (fa.size() != fb.size()) return false;
    auto key = [](const ArcShape& s) {
        return (s.is_virtual ? 8 : 0) | (s.from_free ? 4 : 0) | (s.to_free ? 2 : 0) |
               (s.circle ? 1 : 0);
    };
    std::multiset<int> ka, kb;
    for (const auto& s : fa) ka.insert(key(s));
    for (const auto& s : fb) kb.insert(key(s));
    if (ka != kb) return false;

    std::vector<std::optional<CrossingId>> map(a.crossings.size());
    std::vector<bool> used(b.crossings.size(), false);
    return iso_search(a, b, map, used, 0);
}

std::string emit_diagram(const TangleDiagram& d) {
    std::ostringstream out;
    auto end_str = [](const ArcEnd& e) -> std::string {
        if (!e.attached()) return e.label.empty() ? "-" : e.label;
        const char* names[] = {"oi", "oo", "ui", "uo"};
        return "c" + std::to_string(*e.crossing) + "." + names[static_cast<int>(e.end)];
    };
    for (const auto& [aid, a] : d.arcs)
        out << "ARC " << aid << " " << end_str(a.from) << " " << end_str(a.to) << " "
            << (a.is_virtual ? "virtual" : "real") << "\n";
    for (CrossingId c = 0; c < d.crossings.size(); ++c) {
        const auto& ends = d.crossings[c].ends;
        auto arc_str = [&](CrossEnd e) {
            auto it = ends.find(e);
            return it == ends.end() ? std::string("-") : std::to_string(it->second);
        };
        out << "X " << (d.crossings[c].sign > 0 ? "+1" : "-1") << " " << arc_str(CrossEnd::OverIn)
            << " " << arc_str(CrossEnd::OverOut) << " " << arc_str(CrossEnd::UnderIn) << " "
            << arc_str(CrossEnd::UnderOut) << "\n";
    }
    return out.str();
}

}  // namespace zipper
