#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ciliate/errors.hpp"
#include "ciliate/reduction.hpp"

namespace ciliate {

/// Simple vertex-labelled graph. Edges are kept sorted and unique.
struct LabelledGraph {
    std::vector<int> labels;
    std::vector<Edge> edges;
    std::vector<std::string> names;  // optional display ids

    std::size_t vertex_count() const { return labels.size(); }
    std::string name(int v) const {
        return names.empty() ? "v" + std::to_string(v) : names[static_cast<std::size_t>(v)];
    }

    void add_edge(int x, int y) {
        if (x == y) throw std::invalid_argument("labelled graphs have no self-loops");
        const Edge e = Edge::of(x, y);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) edges.insert(it, e);
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(labels.size());
        for (const Edge& e : edges) {
            adj[static_cast<std::size_t>(e.a)].push_back(e.b);
            adj[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        return adj;
    }
};

inline std::vector<std::vector<int>> components(const LabelledGraph& g) {
    ColouredGraph view;
    view.labels = g.labels;
    view.reality = g.edges;
    return components(view);
}

inline std::size_t component_count(const LabelledGraph& g) { return components(g).size(); }

/// cps: each desire edge becomes a vertex carrying its label; two distinct
/// desire edges are adjacent when a reality edge joins an endpoint of one to
/// an endpoint of the other. Output vertex i is desire[i]; its name joins the
/// endpoint names, smaller id first.
inline LabelledGraph cps(const ColouredGraph& g) {
    LabelledGraph out;
    std::vector<int> owner(g.vertex_count(), -1);
    for (std::size_t k = 0; k < g.desire.size(); ++k) {
        const Edge& d = g.desire[k];
        if (g.labels[static_cast<std::size_t>(d.a)] != g.labels[static_cast<std::size_t>(d.b)])
            throw std::invalid_argument("cps: desire edge " + g.name(d.a) + "-" + g.name(d.b) +
                                        " joins vertices with different labels");
        out.labels.push_back(g.labels[static_cast<std::size_t>(d.a)]);
        out.names.push_back(g.name(d.a) + "~" + g.name(d.b));
    }
    // Vertex-to-desire-edge map; a vertex on two desire edges would make the
    // reality adjacency ambiguous, so fall back to the set-based definition.
    bool matching = true;
    for (std::size_t k = 0; k < g.desire.size(); ++k) {
        for (int v : {g.desire[k].a, g.desire[k].b}) {
            if (owner[static_cast<std::size_t>(v)] >= 0) matching = false;
            owner[static_cast<std::size_t>(v)] = static_cast<int>(k);
        }
    }
    if (matching) {
        for (const Edge& r : g.reality) {
            const int x = owner[static_cast<std::size_t>(r.a)], y = owner[static_cast<std::size_t>(r.b)];
            if (x >= 0 && y >= 0 && x != y) out.add_edge(x, y);
        }
        return out;
    }
    for (std::size_t i = 0; i < g.desire.size(); ++i)
        for (std::size_t j = i + 1; j < g.desire.size(); ++j)
            for (const Edge& r : g.reality) {
                const Edge &di = g.desire[i], &dj = g.desire[j];
                const bool hit = (di.touches(r.a) && dj.touches(r.b)) || (di.touches(r.b) && dj.touches(r.a));
                if (hit) {
                    out.add_edge(static_cast<int>(i), static_cast<int>(j));
                    break;
                }
            }
    return out;
}

inline LabelledGraph cps(const ReductionGraph& rg) { return cps(rg.graph()); }

}  // namespace ciliate
