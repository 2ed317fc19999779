#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zipper/graph.hpp"

namespace zipper {

enum class MoveKind : std::uint8_t {
    Click,
    Zip,
    TowerMerge,
    TowerSplit,
    CoComm,
    CoAssoc,
    FanInCross,
    DistPlus,
    DistMinus,
    PruneZP,
    PruneZM,
    PruneFO,
    PruneFI,
    PruneArrowT,
};

constexpr std::size_t kMoveKindCount = 14;
std::string_view move_name(MoveKind k);  // click, zip, tower+, tower-, cocomm, coassoc, fanin,
                                         // dist+, dist-, prune-zp, prune-zm, prune-fo, prune-fi,
                                         // prune-arrow
std::optional<MoveKind> move_from_name(std::string_view name);
std::vector<MoveKind> all_move_kinds();

enum class ClickCase : std::uint8_t {
    Equal,          // m == n: zipper only
    PlusResidual,   // m > n: zipper feeds a leftover (+) half-zipper
    MinusResidual,  // m < n: leftover (-) half-zipper feeds the zipper
};

// One maximal run of arrows glued together by a rewrite that deletes nodes.
// `arrow` is the surviving arrow in the result graph; a closed run has no
// survivor and became a loop. `slots` lists the fusion pairs crossed in order.
struct FusionChain {
    std::optional<ArrowId> arrow;
    std::vector<int> slots;
};

struct PatternMismatch : std::runtime_error {
    explicit PatternMismatch(const std::string& msg) : std::runtime_error("pattern mismatch: " + msg) {}
};

// An occurrence of a move's pattern, or (with `reversed` set) the data needed
// to run a move backwards: role-named nodes and arrows plus the parameters
// that make the rewrite invertible.
struct Match {
    MoveKind kind;
    bool reversed = false;
    std::map<std::string, NodeId> nodes;
    std::map<std::string, ArrowId> arrows;
    ClickCase click_case = ClickCase::Equal;
    std::uint32_t arity_a = 0;  // click: minus arity; tower: src arity; zip/dist/prune: pattern arity
    std::uint32_t arity_b = 0;  // click: plus arity; tower merge: dst arity
    std::uint32_t split_point = 0;
    std::vector<FusionChain> chains;
    std::vector<int> extra;  // prune-fo: terminated out port; prune-zm: internal var (0 = none)

    NodeId node(const std::string& role) const;
    ArrowId arrow(const std::string& role) const;
    std::string summary() const;
};

// Complete, duplicate-free, deterministically ordered list of occurrences.
std::vector<Match> enumerate_matches(const ZGraph& g, MoveKind kind);

// Reverse occurrences that are cheap to spot (un-click on zippers, the
// mirrored co-assoc). Tower merge and split already invert each other and
// co-comm is an involution, so they need no separate listing. Un-zip,
// un-dist and un-prune have unbounded parameter spaces and are only produced
// as inverses of applied moves.
std::vector<Match> enumerate_reverse_matches(const ZGraph& g, MoveKind kind);

struct ApplyResult {
    ZGraph graph;
    Match inverse;  // applying this to `graph` restores the input up to isomorphism
};

ApplyResult apply_move(const ZGraph& g, const Match& m);
ZGraph apply(const ZGraph& g, const Match& m);
ZGraph reverse(const ZGraph& g, const Match& reverse_match);

}  // namespace zipper
