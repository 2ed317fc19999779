#pragma once

#include <map>
#include <set>
#include <string>

#include "zipper/graph.hpp"
#include "zipper/zg_io.hpp"

namespace zipper::testutil {

// Free-end labels with their side: "<label>/t" for tails, "<label>/h" for heads.
inline std::multiset<std::string> free_ends(const ZGraph& g) {
    std::multiset<std::string> out;
    for (const auto& [aid, a] : g.arrows()) {
        if (is_free(a.tail)) out.insert(std::get<FreeEnd>(a.tail).label + "/t");
        if (is_free(a.head)) out.insert(std::get<FreeEnd>(a.head).label + "/h");
    }
    return out;
}

inline std::map<std::string, int> kind_census(const ZGraph& g) {
    std::map<std::string, int> out;
    for (const auto& [nid, k] : g.nodes()) ++out[kind_name(k)];
    return out;
}

inline bool has_free_arrow(const ZGraph& g, const std::string& from, const std::string& to) {
    for (const auto& [aid, a] : g.arrows())
        if (is_free(a.tail) && is_free(a.head) && std::get<FreeEnd>(a.tail).label == from &&
            std::get<FreeEnd>(a.head).label == to)
            return true;
    return false;
}

}  // namespace zipper::testutil
