#include "zipper/combinators.hpp"

#include <set>

#include "zipper/moves.hpp"

namespace zipper {

ArrowId compile_into(ZGraph& g, const Term& t) {
    switch (t->op) {
        case TermNode::Op::I: {
            NodeId m = g.add_node(zm(1));
            g.add_arrow(PortRef{m, var(1)}, PortRef{m, in0()});
            return g.add_arrow(Endpoint{PortRef{m, out0()}}, Endpoint{FreeEnd{g.fresh_label("out")}});
        }
        case TermNode::Op::K: {
            NodeId m = g.add_node(zm(2));
            NodeId t_ = g.add_node(termination());
            g.add_arrow(PortRef{m, var(1)}, PortRef{m, in0()});
            g.add_arrow(PortRef{m, var(2)}, PortRef{t_, in0()});
            return g.add_arrow(Endpoint{PortRef{m, out0()}}, Endpoint{FreeEnd{g.fresh_label("out")}});
        }
        case TermNode::Op::S: {
            NodeId m = g.add_node(zm(3));
            NodeId fo = g.add_node(fan_out());
            NodeId pa = g.add_node(zp(1));  // (x z)
            NodeId pb = g.add_node(zp(1));  // (y z)
            NodeId pt = g.add_node(zp(1));  // (x z)(y z)
            g.add_arrow(PortRef{m, var(1)}, PortRef{pa, in0()});
            g.add_arrow(PortRef{m, var(2)}, PortRef{pb, in0()});
            g.add_arrow(PortRef{m, var(3)}, PortRef{fo, in0()});
            g.add_arrow(PortRef{fo, var(1)}, PortRef{pa, arg(1)});
            g.add_arrow(PortRef{fo, var(2)}, PortRef{pb, arg(1)});
            g.add_arrow(PortRef{pa, out0()}, PortRef{pt, in0()});
            g.add_arrow(PortRef{pb, out0()}, PortRef{pt, arg(1)});
            g.add_arrow(PortRef{pt, out0()}, PortRef{m, in0()});
            return g.add_arrow(Endpoint{PortRef{m, out0()}}, Endpoint{FreeEnd{g.fresh_label("out")}});
        }
        case TermNode::Op::App: {
            ArrowId fn_out = compile_into(g, t->fn);
            ArrowId arg_out = compile_into(g, t->arg);
            NodeId p = g.add_node(zp(1));
            g.set_head(fn_out, PortRef{p, in0()});
            g.set_head(arg_out, PortRef{p, arg(1)});
            return g.add_arrow(Endpoint{PortRef{p, out0()}}, Endpoint{FreeEnd{g.fresh_label("out")}});
        }
    }
    throw std::logic_error("compile_into: bad term");
}

ZGraph compile(const Term& t) {
    ZGraph g;
    compile_into(g, t);
    return g;
}

namespace {

struct Decoder {
    const ZGraph& g;
    PortIndex idx;
    std::set<NodeId> consumed;
    std::string reason;
    std::optional<NodeId> offending;

    explicit Decoder(const ZGraph& g_) : g(g_), idx(g_) {}

    bool fail(NodeId n, const std::string& why) {
        if (!offending) {
            offending = n;
            reason = why;
        }
        return false;
    }

    bool take(NodeId n) {
        if (consumed.count(n)) return fail(n, "node used by two patterns");
        consumed.insert(n);
        return true;
    }

    // The node at the tail of `a` must be the root of a combinator shape.
    std::optional<Term> decode(ArrowId a) {
        const Arrow& ar = g.arrow(a);
        if (is_free(ar.tail)) {
            reason = "free-tailed arrow where a subterm was expected";
            return std::nullopt;
        }
        PortRef root = port_ref(ar.tail);
        if (!(root.port == out0())) {
            fail(root.node, "subterm arrow not tailed at an out-0 port");
            return std::nullopt;
        }
        NodeId n = root.node;
        NodeKind k = g.kind(n);
        switch (k.kind) {
            case Kind::HalfZipperPlus: {
                if (!take(n)) return std::nullopt;
                auto fn_arrow = idx.at(n, in0());
                if (!fn_arrow) {
                    fail(n, "application node with unoccupied function port");
                    return std::nullopt;
                }
                auto acc = decode(*fn_arrow);
                if (!acc) return std::nullopt;
                for (std::uint32_t i = 1; i <= k.arity; ++i) {
                    auto arg_arrow = idx.at(n, arg(i));
                    if (!arg_arrow) {
                        fail(n, "application node with unoccupied argument port");
                        return std::nullopt;
                    }
                    auto sub = decode(*arg_arrow);
                    if (!sub) return std::nullopt;
                    acc = app(*acc, *sub);
                }
                return acc;
            }
            case Kind::HalfZipperMinus: return decode_combinator(n, k);
            default:
                fail(n, "node kind never occurs at a combinator root");
                return std::nullopt;
        }
    }

    bool internal_arrow(NodeId n, Port from, Port to) {
        auto a = idx.at(n, from);
        if (!a) return false;
        const Arrow& ar = g.arrow(*a);
        return !is_free(ar.tail) && port_ref(ar.tail) == PortRef{n, from} && !is_free(ar.head) &&
               port_ref(ar.head) == PortRef{n, to};
    }

    // Head of the arrow leaving (n, p), when attached.
    std::optional<PortRef> head_of(NodeId n, Port p) {
        auto a = idx.at(n, p);
        if (!a) return std::nullopt;
        const Arrow& ar = g.arrow(*a);
        if (is_free(ar.head)) return std::nullopt;
        return port_ref(ar.head);
    }

    std::optional<Term> decode_combinator(NodeId n, NodeKind k) {
        if (!take(n)) return std::nullopt;
        if (k.arity == 1) {
            if (internal_arrow(n, var(1), in0())) return i_term();
            fail(n, "(-1) half-zipper is not the I shape");
            return std::nullopt;
        }
        if (k.arity == 2) {
            if (!internal_arrow(n, var(1), in0())) {
                fail(n, "(-2) half-zipper is not the K shape");
                return std::nullopt;
            }
            auto t = head_of(n, var(2));
            if (!t || g.kind(t->node).kind != Kind::Termination || !take(t->node)) {
                fail(n, "K shape needs its unused variable terminated");
                return std::nullopt;
            }
            return k_term();
        }
        if (k.arity == 3) return decode_s(n);
        fail(n, "half-zipper arity above 3 is not a combinator");
        return std::nullopt;
    }

    std::optional<Term> decode_s(NodeId n) {
        auto pa = head_of(n, var(1));
        auto pb = head_of(n, var(2));
        auto fo = head_of(n, var(3));
        auto body = idx.at(n, in0());
        if (!pa || !pb || !fo || !body || !(pa->port == in0()) || !(pb->port == in0()) ||
            !(fo->port == in0())) {
            fail(n, "(-3) half-zipper is not the S shape");
            return std::nullopt;
        }
        NodeId a = pa->node, b = pb->node, f = fo->node;
        if (g.kind(a) != zp(1) || g.kind(b) != zp(1) || g.kind(f).kind != Kind::FanOut) {
            fail(n, "S shape wants two (+1) half-zippers and a fan-out on its variables");
            return std::nullopt;
        }
        auto z1 = head_of(f, var(1));
        auto z2 = head_of(f, var(2));
        bool straight = z1 && z2 && *z1 == PortRef{a, arg(1)} && *z2 == PortRef{b, arg(1)};
        bool swapped = z1 && z2 && *z1 == PortRef{b, arg(1)} && *z2 == PortRef{a, arg(1)};
        if (!straight && !swapped) {
            fail(n, "S shape fan-out does not feed both application arguments");
            return std::nullopt;
        }
        auto ta = head_of(a, out0());
        auto tb = head_of(b, out0());
        if (!ta || !tb) {
            fail(n, "S shape applications must feed the top application");
            return std::nullopt;
        }
        NodeId top = ta->node;
        if (g.kind(top) != zp(1) || !(*ta == PortRef{top, in0()}) || !(*tb == PortRef{top, arg(1)})) {
            fail(n, "S shape top application mis-wired");
            return std::nullopt;
        }
        auto out = head_of(top, out0());
        if (!out || !(*out == PortRef{n, in0()})) {
            fail(n, "S shape body does not close on the lambda tower");
            return std::nullopt;
        }
        if (!take(a) || !take(b) || !take(f) || !take(top)) return std::nullopt;
        return s_term();
    }
};

}  // namespace

Readback readback(const ZGraph& g0) {
    auto [g, loops] = strip_loops(g0);
    (void)loops;
    // (+n) towers read as n-fold application; splitting them into (+1)
    // chains first lets the fixed S/K/I patterns apply to merged bodies.
    bool split = true;
    while (split) {
        split = false;
        for (const Match& m : enumerate_matches(g, MoveKind::TowerSplit)) {
            if (g.kind(m.node("node")).kind != Kind::HalfZipperPlus) continue;
            g = apply(g, m);
            split = true;
            break;
        }
    }
    std::optional<ArrowId> out_arrow;
    for (const auto& [aid, a] : g.arrows()) {
        if (is_free(a.head)) {
            if (out_arrow) return {std::nullopt, "more than one free out end", std::nullopt};
            out_arrow = aid;
        }
        if (is_free(a.tail) && is_free(a.head)) return {std::nullopt, "standalone arrow", std::nullopt};
        if (is_free(a.tail) && !is_free(a.head))
            return {std::nullopt, "free in end", std::nullopt};
    }
    if (!out_arrow) return {std::nullopt, "no free out end", std::nullopt};

    Decoder d(g);
    auto t = d.decode(*out_arrow);
    if (!t) return {std::nullopt, d.reason, d.offending};
    if (d.consumed.size() != g.nodes().size()) {
        for (const auto& [nid, k] : g.nodes())
            if (!d.consumed.count(nid))
                return {std::nullopt, "leftover node outside any combinator shape", nid};
    }
    return {t, "", std::nullopt};
}

}  // namespace zipper
