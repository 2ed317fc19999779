#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zipper/graph.hpp"

namespace zipper {

using ArcId = std::uint32_t;
using CrossingId = std::uint32_t;

// Crossing ends, named from the strand that passes over.
enum class CrossEnd : std::uint8_t { OverIn, OverOut, UnderIn, UnderOut };

struct ArcEnd {
    // Either a crossing end or a free endpoint label.
    std::optional<CrossingId> crossing;
    CrossEnd end = CrossEnd::OverIn;
    std::string label;  // used when crossing is empty

    bool attached() const { return crossing.has_value(); }
};

struct Arc {
    ArcEnd from;
    ArcEnd to;
    bool is_virtual = false;
};

struct Crossing {
    int sign;  // -1 for half-zipper-minus levels, +1 for plus levels
    std::map<CrossEnd, ArcId> ends;
};

struct TangleDiagram {
    std::map<ArcId, Arc> arcs;
    std::vector<Crossing> crossings;
    ArcId next_arc = 0;

    ArcId add_arc(ArcEnd from, ArcEnd to, bool is_virtual);
    std::vector<std::string> validate() const;
};

struct UnsupportedNode : std::runtime_error {
    explicit UnsupportedNode(const std::string& m) : std::runtime_error(m) {}
};
struct BadSite : std::runtime_error {
    explicit BadSite(const std::string& m) : std::runtime_error(m) {}
};

// Oriented tangle diagram of a graph built from half-zippers, zippers and
// arrows only. A (-n) half-zipper becomes a chain of n negative crossings
// with its spine on the over strand; a (+m) half-zipper a chain of m positive
// crossings with its spine under. A zipper is the clicked pair: both chains
// with all closure arcs real. Unclicked closures come out virtual.
TangleDiagram encode(const ZGraph& g);

// Rendering-only variant that draws fan-out/fan-in/termination nodes as
// labelled endpoints instead of failing.
TangleDiagram encode_extended(const ZGraph& g);

// Virtual closure arcs grouped per minus/plus chain pair.
std::vector<std::vector<ArcId>> click_sites(const TangleDiagram& d);
TangleDiagram realize_click(const TangleDiagram& d, const std::vector<ArcId>& site);

// Oriented Reidemeister-2 sites: opposite-sign crossing pairs joined by two
// real over-out -> under-in arcs.
std::vector<std::pair<CrossingId, CrossingId>> r2_sites(const TangleDiagram& d);
TangleDiagram apply_r2(const TangleDiagram& d, std::pair<CrossingId, CrossingId> site);

bool diagram_iso(const TangleDiagram& a, const TangleDiagram& b);

std::string emit_diagram(const TangleDiagram& d);

}  // namespace zipper
