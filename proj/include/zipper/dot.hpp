#pragma once

#include <string>

#include "zipper/graph.hpp"

namespace zipper {

// Graphviz digraph text. Node shapes distinguish the six kinds, edge labels
// carry port names, free ends and loops become point-shaped pseudo-nodes.
std::string emit_dot(const ZGraph& g);

}  // namespace zipper
