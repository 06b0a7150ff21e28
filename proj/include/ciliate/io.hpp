#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ciliate/compress.hpp"
#include "ciliate/direct.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/overlap.hpp"
#include "ciliate/reduction.hpp"

namespace ciliate {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Overlap graph JSON:
//   {"vertices":[{"p":2,"sign":"-"},...],"edges":[[2,3],...]}
// Vertices ascending, each edge (smaller, larger), edges sorted.
// ---------------------------------------------------------------------------

inline std::string emit_overlap_json(const OverlapGraph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (int p : g.domain().members()) {
        ordered_json v;
        v["p"] = p;
        v["sign"] = std::string(1, g.sign(p));
        j["vertices"].push_back(std::move(v));
    }
    j["edges"] = ordered_json::array();
    for (const auto& [p, q] : g.edges()) j["edges"].push_back({p, q});
    return j.dump();
}

namespace detail {

inline ordered_json parse_json_text(std::string_view text) {
    try {
        return ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

inline int json_magnitude(const ordered_json& v, const char* what) {
    if (!v.is_number_integer()) throw parse_error(std::string(what) + " must be an integer");
    const auto p = v.get<long long>();
    if (p < 2 || p > kMaxMagnitude)
        throw parse_error(std::string(what) + " " + std::to_string(p) + " outside 2.." + std::to_string(kMaxMagnitude));
    return static_cast<int>(p);
}

}  // namespace detail

inline OverlapGraph parse_overlap_json(std::string_view text) {
    const auto j = detail::parse_json_text(text);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j["vertices"].is_array() ||
        !j["edges"].is_array())
        throw parse_error("overlap graph JSON needs array members \"vertices\" and \"edges\"");
    PointerSet vertices, positive;
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("p") || !v.contains("sign"))
            throw parse_error("each vertex needs \"p\" and \"sign\"");
        const int p = detail::json_magnitude(v["p"], "vertex");
        if (vertices.contains(p)) throw parse_error("duplicate vertex " + std::to_string(p));
        vertices.insert(p);
        const auto& s = v["sign"];
        if (s == "+")
            positive.insert(p);
        else if (s != "-")
            throw parse_error("sign of vertex " + std::to_string(p) + " must be \"+\" or \"-\"");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw parse_error("each edge must be a pair [p,q]");
        const int p = detail::json_magnitude(e[0], "edge endpoint");
        const int q = detail::json_magnitude(e[1], "edge endpoint");
        if (p == q) throw parse_error("self-loop on vertex " + std::to_string(p));
        if (!vertices.contains(p) || !vertices.contains(q))
            throw parse_error("edge [" + std::to_string(p) + "," + std::to_string(q) + "] has an endpoint that is not a vertex");
        edges.emplace_back(p, q);
    }
    return OverlapGraph(vertices, positive, edges);
}

// ---------------------------------------------------------------------------
// Direct reduction graph JSON: {"kappa":K,"edges":[["J2","J6"],...]}
// Edges in vertex-index order (J2 < Jp2 < J3 < ...).
// ---------------------------------------------------------------------------

inline std::string emit_direct_json(const DirectReductionGraph& r) {
    ordered_json j;
    j["kappa"] = r.kappa;
    j["edges"] = ordered_json::array();
    for (const auto& [x, y] : r.edge_list()) j["edges"].push_back({x.name(), y.name()});
    return j.dump();
}

inline DirectVertex parse_direct_vertex(std::string_view name) {
    DirectVertex v;
    std::string_view digits;
    if (name.substr(0, 2) == "Jp") {
        v.root = true;
        digits = name.substr(2);
    } else if (name.substr(0, 1) == "J") {
        digits = name.substr(1);
    } else {
        throw parse_error("vertex name '" + std::string(name) + "' is not J<k> or Jp<k>");
    }
    if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string_view::npos)
        throw parse_error("vertex name '" + std::string(name) + "' is not J<k> or Jp<k>");
    v.label = std::stoi(std::string(digits));
    return v;
}

inline DirectReductionGraph parse_direct_json(std::string_view text) {
    const auto j = detail::parse_json_text(text);
    if (!j.is_object() || !j.contains("kappa") || !j.contains("edges") || !j["edges"].is_array())
        throw parse_error("direct graph JSON needs \"kappa\" and an \"edges\" array");
    if (!j["kappa"].is_number_integer()) throw parse_error("kappa must be an integer");
    const auto kappa = j["kappa"].get<long long>();
    if (kappa < 2 || kappa > kMaxMagnitude) throw parse_error("kappa " + std::to_string(kappa) + " out of range");
    DirectReductionGraph r;
    r.kappa = static_cast<int>(kappa);
    for (int i = 0; i < 2 * (r.kappa - 1); ++i) {
        const auto v = DirectReductionGraph::vertex(i);
        r.graph.labels.push_back(v.label);
        r.graph.names.push_back(v.name());
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw parse_error("each edge must be a pair of vertex names");
        const auto x = parse_direct_vertex(e[0].get<std::string>());
        const auto y = parse_direct_vertex(e[1].get<std::string>());
        for (const auto& v : {x, y})
            if (v.label < 2 || v.label > r.kappa) throw parse_error("vertex " + v.name() + " outside 2..kappa");
        if (x == y) throw parse_error("self-loop on " + x.name());
        r.graph.add_edge(DirectReductionGraph::index(x), DirectReductionGraph::index(y));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Graphviz DOT
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dot_id(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

/// Reality edges are bold, desire edges dashed; reality edges first in
/// position order, then desire edges in sorted order.
inline std::string emit_dot(const ColouredGraph& g, std::string_view name = "R") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << "  " << detail::dot_id(g.name(static_cast<int>(v))) << " [label=" << g.labels[v] << "];\n";
    for (const Edge& e : g.reality)
        out << "  " << detail::dot_id(g.name(e.a)) << " -- " << detail::dot_id(g.name(e.b)) << " [penwidth=2];\n";
    for (const Edge& e : g.desire)
        out << "  " << detail::dot_id(g.name(e.a)) << " -- " << detail::dot_id(g.name(e.b)) << " [style=dashed];\n";
    out << "}\n";
    return out.str();
}

inline std::string emit_dot(const ReductionGraph& rg) { return emit_dot(rg.graph(), "R"); }

/// Plain single edges.
inline std::string emit_dot(const LabelledGraph& g, std::string_view name = "G") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << "  " << detail::dot_id(g.name(static_cast<int>(v))) << " [label=" << g.labels[v] << "];\n";
    for (const Edge& e : g.edges)
        out << "  " << detail::dot_id(g.name(e.a)) << " -- " << detail::dot_id(g.name(e.b)) << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string emit_dot(const DirectReductionGraph& r) { return emit_dot(r.graph, "R_gamma"); }

/// Vertices carry their sign as an external label.
inline std::string emit_dot(const OverlapGraph& g) {
    std::ostringstream out;
    out << "graph gamma {\n";
    for (int p : g.domain().members())
        out << "  " << detail::dot_id(std::to_string(p)) << " [label=" << p << ", xlabel=\"" << g.sign(p) << "\"];\n";
    for (const auto& [p, q] : g.edges())
        out << "  " << detail::dot_id(std::to_string(p)) << " -- " << detail::dot_id(std::to_string(q)) << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ciliate
