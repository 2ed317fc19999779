#include "zipper/dot.hpp"

#include <sstream>

namespace zipper {

namespace {

const char* shape_of(Kind k) {
    switch (k) {
        case Kind::HalfZipperMinus: return "invtrapezium";
        case Kind::HalfZipperPlus: return "trapezium";
        case Kind::Zipper: return "hexagon";
        case Kind::FanOut: return "triangle";
        case Kind::FanIn: return "invtriangle";
        case Kind::Termination: return "square";
    }
    return "ellipse";
}

}  // namespace

std::string emit_dot(const ZGraph& g) {
    std::ostringstream out;
    out << "digraph zg {\n";
    out << "  rankdir=TB;\n";
    for (const auto& [nid, k] : g.nodes()) {
        out << "  n" << nid << " [label=\"" << kind_name(k) << "\", shape=" << shape_of(k.kind)
            << "];\n";
    }
    std::size_t free_counter = 0;
    auto end_name = [&](const Endpoint& e) -> std::string {
        if (!is_free(e)) return "n" + std::to_string(port_ref(e).node);
        std::string id = "f" + std::to_string(free_counter++);
        out << "  " << id << " [label=\"" << std::get<FreeEnd>(e).label << "\", shape=point];\n";
        return id;
    };
    for (const auto& [aid, a] : g.arrows()) {
        std::string from = end_name(a.tail);
        std::string to = end_name(a.head);
        out << "  " << from << " -> " << to << " [";
        bool first = true;
        if (!is_free(a.tail)) {
            out << "taillabel=\"" << port_name(port_ref(a.tail).port) << "\"";
            first = false;
        }
        if (!is_free(a.head)) {
            if (!first) out << ", ";
            out << "headlabel=\"" << port_name(port_ref(a.head).port) << "\"";
            first = false;
        }
        out << "];\n";
    }
    for (std::uint32_t i = 0; i < g.loop_count(); ++i) {
        out << "  loop" << i << " [label=\"loop\", shape=doublecircle];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace zipper
