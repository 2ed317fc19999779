#pragma once

#include <optional>
#include <string>

#include "zipper/graph.hpp"
#include "zipper/term.hpp"

namespace zipper {

// Builds the zipper combinator graph of a term. I is a (-1) half-zipper with
// its variable wired straight into its body port; K is a (-2) half-zipper
// whose unused variable ends in a termination node; S is a (-3) half-zipper
// over one fan-out and three (+1) half-zippers computing (x z)(y z).
// Applications compile to (+1) half-zipper chains. The result always has
// exactly one free end, the out arrow.
ZGraph compile(const Term& t);

// Appends the term's graph to `g`; returns the free-headed out arrow.
ArrowId compile_into(ZGraph& g, const Term& t);

struct Readback {
    std::optional<Term> term;
    std::string reason;                  // set on failure
    std::optional<NodeId> offending;     // first non-matching node
};

// Inverse of compile on combinator-shaped graphs, reading (+n) half-zippers
// as n-fold left-nested application. Residual loops are ignored. The S
// pattern accepts either fan-out arm order.
Readback readback(const ZGraph& g);

}  // namespace zipper
