#include "zipper/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace zipper {

NodeKind zm(std::uint32_t n) { return {Kind::HalfZipperMinus, n}; }
NodeKind zp(std::uint32_t n) { return {Kind::HalfZipperPlus, n}; }
NodeKind zipper_node(std::uint32_t n) { return {Kind::Zipper, n}; }
NodeKind fan_out() { return {Kind::FanOut, 0}; }
NodeKind fan_in() { return {Kind::FanIn, 0}; }
NodeKind termination() { return {Kind::Termination, 0}; }

bool is_out_port(Port p) { return p.slot == Slot::Out0 || p.slot == Slot::Var; }

std::vector<Port> ports_of(NodeKind k) {
    std::vector<Port> ps;
    switch (k.kind) {
        case Kind::HalfZipperMinus:
            ps.push_back(in0());
            ps.push_back(out0());
            for (std::uint32_t i = 1; i <= k.arity; ++i) ps.push_back(var(i));
            break;
        case Kind::HalfZipperPlus:
            ps.push_back(in0());
            for (std::uint32_t i = 1; i <= k.arity; ++i) ps.push_back(arg(i));
            ps.push_back(out0());
            break;
        case Kind::Zipper:
            ps.push_back(in0());
            for (std::uint32_t i = 1; i <= k.arity; ++i) ps.push_back(arg(i));
            ps.push_back(out0());
            for (std::uint32_t i = 1; i <= k.arity; ++i) ps.push_back(var(i));
            break;
        case Kind::FanOut:
            ps.push_back(in0());
            ps.push_back(var(1));
            ps.push_back(var(2));
            break;
        case Kind::FanIn:
            ps.push_back(arg(1));
            ps.push_back(arg(2));
            ps.push_back(out0());
            break;
        case Kind::Termination:
            ps.push_back(in0());
            break;
    }
    return ps;
}

bool valid_port(NodeKind k, Port p) {
    switch (k.kind) {
        case Kind::HalfZipperMinus:
            return (p.slot == Slot::In0 && p.index == 0) || (p.slot == Slot::Out0 && p.index == 0) ||
                   (p.slot == Slot::Var && p.index >= 1 && p.index <= k.arity);
        case Kind::HalfZipperPlus:
            return (p.slot == Slot::In0 && p.index == 0) || (p.slot == Slot::Out0 && p.index == 0) ||
                   (p.slot == Slot::Arg && p.index >= 1 && p.index <= k.arity);
        case Kind::Zipper:
            return (p.slot == Slot::In0 && p.index == 0) || (p.slot == Slot::Out0 && p.index == 0) ||
                   ((p.slot == Slot::Var || p.slot == Slot::Arg) && p.index >= 1 && p.index <= k.arity);
        case Kind::FanOut:
            return (p.slot == Slot::In0 && p.index == 0) ||
                   (p.slot == Slot::Var && (p.index == 1 || p.index == 2));
        case Kind::FanIn:
            return (p.slot == Slot::Out0 && p.index == 0) ||
                   (p.slot == Slot::Arg && (p.index == 1 || p.index == 2));
        case Kind::Termination:
            return p.slot == Slot::In0 && p.index == 0;
    }
    return false;
}

std::string port_name(Port p) {
    switch (p.slot) {
        case Slot::In0: return "0";
        case Slot::Out0: return "0'";
        case Slot::Var: return std::to_string(p.index);
        case Slot::Arg: return std::to_string(p.index) + "'";
    }
    return "?";
}

std::string kind_name(NodeKind k) {
    switch (k.kind) {
        case Kind::HalfZipperMinus: return "ZM" + std::to_string(k.arity);
        case Kind::HalfZipperPlus: return "ZP" + std::to_string(k.arity);
        case Kind::Zipper: return "Z" + std::to_string(k.arity);
        case Kind::FanOut: return "FO";
        case Kind::FanIn: return "FI";
        case Kind::Termination: return "T";
    }
    return "?";
}

NodeId ZGraph::add_node(NodeKind k) {
    NodeId id = next_node_++;
    nodes_.emplace(id, k);
    return id;
}

ArrowId ZGraph::add_arrow(Endpoint tail, Endpoint head) {
    ArrowId id = next_arrow_++;
    arrows_.emplace(id, Arrow{std::move(tail), std::move(head)});
    return id;
}

void ZGraph::erase_node(NodeId id) {
    if (!nodes_.erase(id)) throw std::logic_error("erase_node: unknown node");
}

void ZGraph::erase_arrow(ArrowId id) {
    if (!arrows_.erase(id)) throw std::logic_error("erase_arrow: unknown arrow");
}

void ZGraph::set_tail(ArrowId id, Endpoint e) {
    arrows_.at(id).tail = std::move(e);
}

void ZGraph::set_head(ArrowId id, Endpoint e) {
    arrows_.at(id).head = std::move(e);
}

const NodeKind& ZGraph::kind(NodeId id) const { return nodes_.at(id); }

const Arrow& ZGraph::arrow(ArrowId id) const { return arrows_.at(id); }

std::string ZGraph::fresh_label(const std::string& stem) {
    return stem + "$" + std::to_string(label_counter_++);
}

PortIndex::PortIndex(const ZGraph& g) {
    for (const auto& [aid, a] : g.arrows()) {
        if (!is_free(a.tail)) index_.emplace(port_ref(a.tail), aid);
        if (!is_free(a.head)) index_.emplace(port_ref(a.head), aid);
    }
}

std::optional<ArrowId> PortIndex::at(PortRef p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Diagnostic> validate(const ZGraph& g) {
    std::vector<Diagnostic> out;
    std::map<PortRef, int> seen;
    auto check_end = [&](ArrowId aid, const Endpoint& e, bool is_tail) {
        if (is_free(e)) return;
        const PortRef& pr = port_ref(e);
        if (!g.has_node(pr.node)) {
            out.push_back({"dangling-node", "arrow " + std::to_string(aid) +
                                                " references missing node " + std::to_string(pr.node)});
            return;
        }
        NodeKind k = g.kind(pr.node);
        if (!valid_port(k, pr.port)) {
            out.push_back({"invalid-port", "arrow " + std::to_string(aid) + " uses port " +
                                               port_name(pr.port) + " not present on " + kind_name(k)});
            return;
        }
        if (is_tail != is_out_port(pr.port)) {
            out.push_back({"direction-mismatch",
                           "arrow " + std::to_string(aid) + (is_tail ? " tail" : " head") +
                               " attached to " + (is_out_port(pr.port) ? "out" : "in") + " port " +
                               port_name(pr.port) + " of node " + std::to_string(pr.node)});
            return;
        }
        if (++seen[pr] > 1) {
            out.push_back({"port-uniqueness", "port " + port_name(pr.port) + " of node " +
                                                  std::to_string(pr.node) + " used by more than one arrow"});
        }
    };
    for (const auto& [aid, a] : g.arrows()) {
        check_end(aid, a.tail, true);
        check_end(aid, a.head, false);
    }
    return out;
}

bool is_valid(const ZGraph& g) { return validate(g).empty(); }

std::pair<ZGraph, std::uint32_t> strip_loops(const ZGraph& g) {
    ZGraph out = g;
    std::uint32_t n = out.loop_count();
    out.set_loop_count(0);
    return {std::move(out), n};
}

bool fully_occupied(const ZGraph& g) {
    PortIndex idx(g);
    for (const auto& [nid, k] : g.nodes())
        for (Port p : ports_of(k))
            if (!idx.at(nid, p)) return false;
    return true;
}

namespace {

struct UnionFind {
    std::map<NodeId, NodeId> parent;
    NodeId find(NodeId x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        NodeId r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(NodeId a, NodeId b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<ZGraph> components(const ZGraph& g) {
    UnionFind uf;
    for (const auto& [nid, k] : g.nodes()) uf.find(nid);
    for (const auto& [aid, a] : g.arrows())
        if (!is_free(a.tail) && !is_free(a.head)) uf.unite(port_ref(a.tail).node, port_ref(a.head).node);

    std::map<NodeId, ZGraph> by_root;
    std::map<NodeId, std::map<NodeId, NodeId>> remap;  // root -> old node -> new node
    for (const auto& [nid, k] : g.nodes()) {
        NodeId root = uf.find(nid);
        remap[root][nid] = by_root[root].add_node(k);
    }
    auto map_end = [&](NodeId root, const Endpoint& e) -> Endpoint {
        if (is_free(e)) return e;
        const PortRef& pr = port_ref(e);
        return PortRef{remap[root][pr.node], pr.port};
    };

    std::vector<ZGraph> out;
    for (const auto& [aid, a] : g.arrows()) {
        if (is_free(a.tail) && is_free(a.head)) {
            ZGraph solo;
            solo.add_arrow(a.tail, a.head);
            out.push_back(std::move(solo));
            continue;
        }
        NodeId anchor = is_free(a.tail) ? port_ref(a.head).node : port_ref(a.tail).node;
        NodeId root = uf.find(anchor);
        by_root[root].add_arrow(map_end(root, a.tail), map_end(root, a.head));
    }
    for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
    for (std::uint32_t i = 0; i < g.loop_count(); ++i) {
        ZGraph loop;
        loop.add_loops(1);
        out.push_back(std::move(loop));
    }
    return out;
}

}  // namespace zipper
