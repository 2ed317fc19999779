#include "zipper/zg_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "zipper/isomorphism.hpp"

namespace zipper {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t eol = text.find('\n', start);
        std::string_view line = text.substr(start, eol == std::string_view::npos ? std::string_view::npos
                                                                                 : eol - start);
        ++line_no;
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            if (line[i] == '#') break;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
                   line[j] != '#')
                ++j;
            toks.push_back({std::string(line.substr(i, j - i)), line_no, static_cast<int>(i + 1)});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
        if (eol == std::string_view::npos) break;
        start = eol + 1;
    }
    return lines;
}

std::uint32_t parse_arity(const Token& t) {
    for (char c : t.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(t.line, t.column, "expected arity, got '" + t.text + "'");
    long v = std::stol(t.text);
    if (v < 1) throw ParseError(t.line, t.column, "arity must be >= 1");
    return static_cast<std::uint32_t>(v);
}

struct SlotOccurrence {
    // A labelled head or tail slot sitting on a node port.
    bool is_tail;
    PortRef port;
    Token tok;
};

}  // namespace

ZGraph parse_zg(std::string_view text) {
    ZGraph g;
    std::vector<SlotOccurrence> slots;
    std::vector<std::pair<Token, Token>> arrow_stmts;  // (tail label, head label)

    auto add_port_slot = [&](NodeId n, Port p, const Token& t) {
        slots.push_back({is_out_port(p), PortRef{n, p}, t});
    };

    for (const auto& toks : tokenize(text)) {
        const Token& head = toks.front();
        const std::string& op = head.text;
        auto expect_count = [&](std::size_t want) {
            if (toks.size() != want)
                throw ParseError(head.line, head.column,
                                 op + ": expected " + std::to_string(want - 1) + " tokens after keyword, got " +
                                     std::to_string(toks.size() - 1));
        };
        if (op == "ZM" || op == "ZP" || op == "Z") {
            if (toks.size() < 2) throw ParseError(head.line, head.column, op + ": missing arity");
            std::uint32_t n = parse_arity(toks[1]);
            NodeKind k = op == "ZM" ? zm(n) : op == "ZP" ? zp(n) : zipper_node(n);
            std::vector<Port> ports = ports_of(k);
            expect_count(2 + ports.size());
            NodeId node = g.add_node(k);
            for (std::size_t i = 0; i < ports.size(); ++i) add_port_slot(node, ports[i], toks[2 + i]);
        } else if (op == "FO" || op == "FI" || op == "T") {
            NodeKind k = op == "FO" ? fan_out() : op == "FI" ? fan_in() : termination();
            std::vector<Port> ports = ports_of(k);
            expect_count(1 + ports.size());
            NodeId node = g.add_node(k);
            for (std::size_t i = 0; i < ports.size(); ++i) add_port_slot(node, ports[i], toks[1 + i]);
        } else if (op == "LOOP") {
            expect_count(1);
            g.add_loops(1);
        } else if (op == "ARROW") {
            expect_count(3);
            arrow_stmts.emplace_back(toks[1], toks[2]);
        } else {
            throw ParseError(head.line, head.column, "unknown statement '" + op + "'");
        }
    }

    std::map<std::string, const SlotOccurrence*> tails, heads;
    for (const auto& s : slots) {
        auto& side = s.is_tail ? tails : heads;
        auto [it, inserted] = side.emplace(s.tok.text, &s);
        if (!inserted)
            throw ParseError(s.tok.line, s.tok.column,
                             "label '" + s.tok.text + "' used twice in " +
                                 (s.is_tail ? "tail" : "head") + " positions");
    }
    // ARROW declares an arrow with both ends free; its labels may not pair
    // with node ports and count toward the per-position uniqueness rule.
    std::map<std::string, const Token*> arrow_tails, arrow_heads;
    for (const auto& [t, h] : arrow_stmts) {
        for (bool tail_side : {true, false}) {
            const Token& tok = tail_side ? t : h;
            auto& own = tail_side ? arrow_tails : arrow_heads;
            auto& port_side = tail_side ? tails : heads;
            auto& opposite = tail_side ? heads : tails;
            if (port_side.count(tok.text) || !own.emplace(tok.text, &tok).second)
                throw ParseError(tok.line, tok.column,
                                 "label '" + tok.text + "' used twice in " +
                                     (tail_side ? "tail" : "head") + " positions");
            if (opposite.count(tok.text))
                throw ParseError(tok.line, tok.column,
                                 "invalid direction pairing: ARROW label '" + tok.text +
                                     "' also names a node port");
        }
    }

    for (const auto& [t, h] : arrow_stmts) g.add_arrow(FreeEnd{t.text}, FreeEnd{h.text});
    for (const auto& [label, tail_slot] : tails) {
        auto it = heads.find(label);
        Endpoint head = it != heads.end() ? Endpoint{it->second->port} : Endpoint{FreeEnd{label}};
        g.add_arrow(Endpoint{tail_slot->port}, head);
    }
    for (const auto& [label, head_slot] : heads) {
        if (tails.count(label)) continue;
        g.add_arrow(FreeEnd{label}, Endpoint{head_slot->port});
    }
    return g;
}

namespace {

std::string emit_component(const ZGraph& g, const std::string& prefix) {
    std::vector<NodeId> order = canonical_node_order(g);
    PortIndex idx(g);

    std::map<ArrowId, std::string> labels;
    std::size_t counter = 0;
    auto label_of = [&](ArrowId a) -> std::string {
        auto it = labels.find(a);
        if (it != labels.end()) return it->second;
        std::string l = prefix + "e" + std::to_string(counter++);
        labels.emplace(a, l);
        return l;
    };

    std::ostringstream out;
    for (NodeId nid : order) {
        NodeKind k = g.kind(nid);
        switch (k.kind) {
            case Kind::HalfZipperMinus: out << "ZM " << k.arity; break;
            case Kind::HalfZipperPlus: out << "ZP " << k.arity; break;
            case Kind::Zipper: out << "Z " << k.arity; break;
            case Kind::FanOut: out << "FO"; break;
            case Kind::FanIn: out << "FI"; break;
            case Kind::Termination: out << "T"; break;
        }
        for (Port p : ports_of(k)) {
            auto aid = idx.at(nid, p);
            if (!aid)
                throw std::invalid_argument("emit_zg: unoccupied port " + port_name(p) + " on node " +
                                            kind_name(k));
            out << ' ' << label_of(*aid);
        }
        out << '\n';
    }
    for (const auto& [aid, a] : g.arrows())
        if (is_free(a.tail) && is_free(a.head)) out << "ARROW " << label_of(aid) << "x " << label_of(aid) << "y\n";
    return out.str();
}

}  // namespace

std::string emit_zg(const ZGraph& g) {
    std::vector<std::pair<std::string, const ZGraph*>> parts;
    std::vector<ZGraph> comps = components(g);
    for (const ZGraph& comp : comps) {
        if (comp.loop_count() > 0) continue;  // loops appended once at the end
        parts.emplace_back(emit_component(comp, ""), &comp);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream out;
    if (parts.size() == 1) {
        out << parts.front().first;
    } else {
        // Labels must stay distinct across components once concatenated.
        for (std::size_t i = 0; i < parts.size(); ++i)
            out << emit_component(*parts[i].second, "c" + std::to_string(i) + ".");
    }
    for (std::uint32_t i = 0; i < g.loop_count(); ++i) out << "LOOP\n";
    return out.str();
}

std::uint64_t fingerprint(const ZGraph& g) {
    std::string text = emit_zg(g);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fast_digest(const ZGraph& g) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto& [nid, k] : g.nodes()) {
        mix(nid);
        mix((static_cast<std::uint64_t>(k.kind) << 32) | k.arity);
    }
    auto mix_end = [&](const Endpoint& e) {
        if (is_free(e)) {
            mix(0x66726565u);  // free ends hash alike; labels are names only
            return;
        }
        const PortRef& p = port_ref(e);
        mix(p.node);
        mix((static_cast<std::uint64_t>(p.port.slot) << 32) | p.port.index);
    };
    for (const auto& [aid, a] : g.arrows()) {
        mix(aid);
        mix_end(a.tail);
        mix_end(a.head);
    }
    mix(g.loop_count());
    return h;
}

}  // namespace zipper
