#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zipper/graph.hpp"

namespace zipper {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

// Line-oriented .zg format. '#' starts a comment. Statements:
//   ZM n e0 e0p e1 ... en
//   ZP n e0 e1p ... enp e0p
//   Z  n e0 e1p ... enp e0p e1 ... en
//   FO ein eout1 eout2
//   FI ein1 ein2 eout
//   T  ein
//   LOOP
//   ARROW etail ehead
// A label seen once in a head position and once in a tail position becomes an
// internal arrow; a label seen once becomes a free end.
ZGraph parse_zg(std::string_view text);

// Canonical text: components ordered by their canonical serialization, nodes
// in canonical order, labels freshly numbered. parse_zg(emit_zg(g)) is
// isomorphic to g. Requires every node port to carry an arrow (the format has
// no syntax for unoccupied ports).
std::string emit_zg(const ZGraph& g);

// FNV-1a digest of emit_zg. Equal for isomorphic graphs.
std::uint64_t fingerprint(const ZGraph& g);

// Cheap deterministic digest over raw node/arrow ids. Stable across replays
// of the same construction but not across isomorphic relabelings; reduction
// traces use this one, since canonicalizing at every step is quadratic on
// duplication-heavy runs.
std::uint64_t fast_digest(const ZGraph& g);

}  // namespace zipper
