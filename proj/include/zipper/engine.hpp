#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zipper/graph.hpp"
#include "zipper/isomorphism.hpp"
#include "zipper/moves.hpp"
#include "zipper/zg_io.hpp"

namespace zipper {

enum class TieBreak : std::uint8_t { FirstMatch, Random };

struct Strategy {
    std::vector<MoveKind> priority;
    int max_steps = 10000;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::FirstMatch;
    // Fire CLICK only when the (+) arity covers the (-) arity. Keeps normal
    // forms term-shaped: partial applications stay unclicked instead of
    // turning into lambda-like residuals that no term maps back to.
    bool saturated_click = true;
    // When the only fan-in/fan-out pairs left sit on a shared fan-out tree
    // (duplication of a graph that itself contains a fan-out), regroup the
    // tree with co-assoc/co-comm before annihilating, so the two copies
    // separate cleanly.
    bool untangle_shares = true;
};

Strategy default_strategy();
Strategy multiply_strategy();
Strategy kill_strategy();

enum class ReduceStatus : std::uint8_t { NormalForm, StepLimit };

struct TraceStep {
    Match match;
    std::string summary;
    std::uint64_t fp_after;
};

struct Trace {
    std::uint64_t fp_initial = 0;
    std::vector<TraceStep> steps;
    ZGraph final;
    ReduceStatus status = ReduceStatus::NormalForm;
};

Trace reduce(const ZGraph& g, const Strategy& s);
ZGraph replay_trace(const ZGraph& initial, const Trace& t);
std::string format_trace(const Trace& t);

struct LoopCompare {
    bool equal;
    std::uint32_t loop_difference;
};

// Isomorphic after dropping loops (fan-out arms unordered); reports the
// absolute loop-count difference.
LoopCompare equal_mod_loops(const ZGraph& a, const ZGraph& b);

struct PathStep {
    MoveKind kind;
    bool reversed;
    std::string summary;
};

// Breadth-first search over forward moves plus the cheap reverse moves
// (un-click, mirrored co-assoc), testing equal_mod_loops against `target` at
// every state. Bounded and incomplete: not-found is never a disproof.
std::optional<std::vector<PathStep>> search_path(const ZGraph& from, const ZGraph& target, int depth);

struct MultiplyResult {
    bool success;
    ZGraph graph;
    Trace trace;
};

// Feeds the graph's out arrow into a fan-out and reduces until the result
// splits into two copies of the input.
MultiplyResult multiply(const ZGraph& a);

struct KillResult {
    bool success;
    std::uint32_t loops;
    Trace trace;
};

// Caps the graph's out arrow with a termination node and prunes; on success
// nothing remains but loops.
KillResult kill(const ZGraph& a);

}  // namespace zipper
