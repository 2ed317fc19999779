#pragma once

#include "zipper/graph.hpp"

namespace zipper {

struct IsoOptions {
    // Quotient by CO-COMM: the two out ports of each FanOut may be swapped
    // by the bijection.
    bool fanout_outs_unordered = false;
};

// Kind- and port-preserving bijection of nodes inducing a bijection of
// arrows, with equal loop counts. Free-end labels are ignored.
bool isomorphic(const ZGraph& a, const ZGraph& b, IsoOptions opts = {});

// Deterministic, isomorphism-invariant node order (iterative refinement plus
// backtracking on symmetric cells). Two isomorphic graphs yield orders that
// produce identical canonical serializations.
std::vector<NodeId> canonical_node_order(const ZGraph& g);

}  // namespace zipper
