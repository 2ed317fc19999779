#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace zipper {

using NodeId = std::uint32_t;
using ArrowId = std::uint32_t;

enum class Kind : std::uint8_t {
    HalfZipperMinus,  // (-n): port 0 in, port 0' out, ports 1..n out
    HalfZipperPlus,   // (+n): port 0 in, ports 1'..n' in, port 0' out
    Zipper,           // (n):  ports 0, 1'..n' in, ports 0', 1..n out
    FanOut,           // 1 in, 2 out
    FanIn,            // 2 in, 1 out
    Termination,      // 1 in
};

struct NodeKind {
    Kind kind;
    std::uint32_t arity = 0;  // meaningful for the three zipper kinds only

    friend bool operator==(const NodeKind& a, const NodeKind& b) {
        return a.kind == b.kind && a.arity == b.arity;
    }
    friend bool operator!=(const NodeKind& a, const NodeKind& b) { return !(a == b); }
    friend bool operator<(const NodeKind& a, const NodeKind& b) {
        return std::tie(a.kind, a.arity) < std::tie(b.kind, b.arity);
    }
};

NodeKind zm(std::uint32_t n);
NodeKind zp(std::uint32_t n);
NodeKind zipper_node(std::uint32_t n);
NodeKind fan_out();
NodeKind fan_in();
NodeKind termination();

// Port addressing. In0 is the "0" port, Out0 is "0'", Var i is the plain
// port i (1..n), Arg i is the primed port i' (1..n). FanOut uses In0 and
// Var 1/2; FanIn uses Arg 1/2 and Out0; Termination has just In0.
// Direction is fixed by the slot: In0/Arg are heads, Out0/Var are tails.
enum class Slot : std::uint8_t { In0, Out0, Var, Arg };

struct Port {
    Slot slot;
    std::uint32_t index = 0;  // 1..n for Var/Arg, 0 otherwise

    friend bool operator==(const Port& a, const Port& b) {
        return a.slot == b.slot && a.index == b.index;
    }
    friend bool operator<(const Port& a, const Port& b) {
        return std::tie(a.slot, a.index) < std::tie(b.slot, b.index);
    }
};

inline Port in0() { return {Slot::In0, 0}; }
inline Port out0() { return {Slot::Out0, 0}; }
inline Port var(std::uint32_t i) { return {Slot::Var, i}; }
inline Port arg(std::uint32_t i) { return {Slot::Arg, i}; }

bool is_out_port(Port p);
bool valid_port(NodeKind k, Port p);
// Ports in serialization order for the kind.
std::vector<Port> ports_of(NodeKind k);
std::string port_name(Port p);  // "0", "0'", "2", "3'"

struct PortRef {
    NodeId node;
    Port port;

    friend bool operator==(const PortRef& a, const PortRef& b) {
        return a.node == b.node && a.port == b.port;
    }
    friend bool operator<(const PortRef& a, const PortRef& b) {
        return std::tie(a.node, a.port) < std::tie(b.node, b.port);
    }
};

struct FreeEnd {
    std::string label;
};

using Endpoint = std::variant<PortRef, FreeEnd>;

inline bool is_free(const Endpoint& e) { return std::holds_alternative<FreeEnd>(e); }
inline const PortRef& port_ref(const Endpoint& e) { return std::get<PortRef>(e); }

struct Arrow {
    Endpoint tail;  // attached tails sit on out ports
    Endpoint head;  // attached heads sit on in ports
};

struct Diagnostic {
    std::string code;
    std::string message;
};

// A zipper graph: nodes, arrows (possibly with free ends) and a loop count.
// Loops carry no structure, only the count matters. Operations never mutate
// their input; rewrites copy the graph and edit the copy.
class ZGraph {
public:
    using NodeMap = std::map<NodeId, NodeKind>;
    using ArrowMap = std::map<ArrowId, Arrow>;

    NodeId add_node(NodeKind k);
    ArrowId add_arrow(Endpoint tail, Endpoint head);
    ArrowId add_arrow(PortRef tail, PortRef head) {
        return add_arrow(Endpoint{tail}, Endpoint{head});
    }
    void erase_node(NodeId id);
    void erase_arrow(ArrowId id);
    void set_tail(ArrowId id, Endpoint e);
    void set_head(ArrowId id, Endpoint e);

    const NodeMap& nodes() const { return nodes_; }
    const ArrowMap& arrows() const { return arrows_; }
    const NodeKind& kind(NodeId id) const;
    const Arrow& arrow(ArrowId id) const;
    bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
    bool has_arrow(ArrowId id) const { return arrows_.count(id) != 0; }

    std::uint32_t loop_count() const { return loops_; }
    void set_loop_count(std::uint32_t n) { loops_ = n; }
    void add_loops(std::uint32_t n) { loops_ += n; }

    std::string fresh_label(const std::string& stem = "w");

private:
    NodeMap nodes_;
    ArrowMap arrows_;
    std::uint32_t loops_ = 0;
    NodeId next_node_ = 0;
    ArrowId next_arrow_ = 0;
    std::uint64_t label_counter_ = 0;
};

// Arrow lookup per port. Every port holds at most one arrow in a valid graph.
class PortIndex {
public:
    explicit PortIndex(const ZGraph& g);
    std::optional<ArrowId> at(PortRef p) const;
    std::optional<ArrowId> at(NodeId n, Port p) const { return at(PortRef{n, p}); }

private:
    std::map<PortRef, ArrowId> index_;
};

std::vector<Diagnostic> validate(const ZGraph& g);
bool is_valid(const ZGraph& g);

// Returns the graph with loop_count zeroed plus the removed count.
std::pair<ZGraph, std::uint32_t> strip_loops(const ZGraph& g);

// Arrow-connected components. Node ids are preserved. Standalone free-free
// arrows form their own components; each loop becomes a single-loop component.
std::vector<ZGraph> components(const ZGraph& g);

// True when every port of every node carries an arrow.
bool fully_occupied(const ZGraph& g);

std::string kind_name(NodeKind k);  // "ZM2", "ZP1", "Z3", "FO", "FI", "T"

}  // namespace zipper
