#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ciliate/compress.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/overlap.hpp"
#include "ciliate/pointer_set.hpp"
#include "ciliate/reduction.hpp"

namespace ciliate {

/// J_p (non-root) or J'_p (root).
struct DirectVertex {
    int label = 2;
    bool root = false;

    /// "J<p>" or "Jp<p>".
    std::string name() const { return (root ? "Jp" : "J") + std::to_string(label); }
    friend constexpr auto operator<=>(const DirectVertex&, const DirectVertex&) = default;
};

/// R_γ as a labelled graph. Vertex 2(p-2) is J_p and 2(p-2)+1 is J'_p.
struct DirectReductionGraph {
    int kappa = 0;
    LabelledGraph graph;

    static int index(DirectVertex v) { return 2 * (v.label - 2) + (v.root ? 1 : 0); }
    static DirectVertex vertex(int i) { return {i / 2 + 2, i % 2 == 1}; }

    bool has_edge(DirectVertex x, DirectVertex y) const {
        return std::binary_search(graph.edges.begin(), graph.edges.end(), Edge::of(index(x), index(y)));
    }

    /// Edges as vertex pairs, each pair in vertex order, pairs sorted.
    std::vector<std::pair<DirectVertex, DirectVertex>> edge_list() const {
        std::vector<std::pair<DirectVertex, DirectVertex>> out;
        for (const Edge& e : graph.edges) out.emplace_back(vertex(e.a), vertex(e.b));
        return out;
    }
};

/// One way of satisfying a defining condition of R_γ: the chosen index set
/// P, the value ⊕_{t∈P} O_γ(t), and the right-hand side it has to equal.
/// The root chain (condition 1) is unconditional and reported with empty sets.
struct Witness {
    int condition = 0;  // 1..5
    PointerSet chosen;
    PointerSet value;
    PointerSet target;
};

namespace detail {

inline PointerSet xor_of_neighbourhoods(const OverlapGraph& g, const PointerSet& indices) {
    PointerSet acc;
    for (int t : indices.members()) acc ^= g.neighbours(t);
    return acc;
}

inline void require_direct_domain(const OverlapGraph& g) {
    if (!has_contiguous_domain(g))
        throw not_realistic_error("reduction graph of an overlap graph needs dom = {2..kappa}, got " +
                                  g.domain().to_string());
}

/// Tries base ∪ P' for every P' ⊆ optional (in the order ∅, {x}, {y}, {x,y}).
inline void collect(const OverlapGraph& g, int condition, const PointerSet& base, const std::vector<int>& optional,
                    const PointerSet& extra, std::vector<Witness>& out) {
    const std::size_t subsets = std::size_t{1} << optional.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        PointerSet chosen = base;
        for (std::size_t b = 0; b < optional.size(); ++b)
            if ((mask >> b) & 1u) chosen.insert(optional[b]);
        const PointerSet value = xor_of_neighbourhoods(g, chosen);
        const PointerSet target = (g.positive() & chosen) ^ extra;
        if (value != target) continue;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Witness& w) { return w.chosen == chosen; });
        if (!duplicate) out.push_back({condition, chosen, value, target});
    }
}

}  // namespace detail

/// Every witness for the candidate edge {x, y} of R_γ; the edge is present
/// iff the list is non-empty. Pairs that match none of the five edge forms
/// get an empty list.
inline std::vector<Witness> condition_witnesses(const OverlapGraph& g, DirectVertex x, DirectVertex y) {
    detail::require_direct_domain(g);
    const int kappa = static_cast<int>(g.size()) + 1;
    for (auto v : {x, y})
        if (v.label < 2 || v.label > kappa)
            throw std::invalid_argument("vertex " + v.name() + " is not a vertex of R_gamma");
    if (x == y) return {};
    if (y < x) std::swap(x, y);

    std::vector<Witness> out;
    if (x.root && y.root) {
        if (y.label == x.label + 1) {
            out.push_back({1, {}, {}, {}});
        } else if (x.label == 2 && y.label == kappa && kappa > 3) {
            detail::collect(g, 5, PointerSet::range(2, kappa), {}, {}, out);
        }
        return out;
    }
    if (!x.root && !y.root) {
        const int p = x.label, q = y.label;
        detail::collect(g, 2, PointerSet::range(p + 1, q - 1), {p, q}, PointerSet{p, q}, out);
        return out;
    }
    const DirectVertex root = x.root ? x : y;
    const int p = x.root ? y.label : x.label;
    if (root.label == 2) detail::collect(g, 3, PointerSet::range(2, p - 1), {p}, PointerSet{p}, out);
    if (root.label == kappa) detail::collect(g, 4, PointerSet::range(p + 1, kappa), {p}, PointerSet{p}, out);
    return out;
}

/// R_γ built from γ alone. γ must have dom = {2..κ}; whether γ is actually
/// realistic is not checked here.
inline DirectReductionGraph direct_reduction_graph(const OverlapGraph& g) {
    detail::require_direct_domain(g);
    DirectReductionGraph out;
    out.kappa = static_cast<int>(g.size()) + 1;
    const int count = 2 * (out.kappa - 1);
    for (int i = 0; i < count; ++i) {
        const auto v = DirectReductionGraph::vertex(i);
        out.graph.labels.push_back(v.label);
        out.graph.names.push_back(v.name());
    }
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (!condition_witnesses(g, DirectReductionGraph::vertex(i), DirectReductionGraph::vertex(j)).empty())
                out.graph.add_edge(i, j);
    return out;
}

/// Undoes cps up to isomorphism: every vertex becomes a desire edge with the
/// same label and every edge a reality edge. A cps image of a reduction
/// graph only has cycles, single edges (from 4-cycles) and isolated
/// vertices (from 2-cycles); anything else throws invariant_error.
inline ColouredGraph inflate(const LabelledGraph& g) {
    ColouredGraph out;
    const auto n = g.vertex_count();
    out.labels.resize(2 * n);
    out.names.resize(2 * n);
    auto head = [](int v) { return 2 * v; };
    auto tail = [](int v) { return 2 * v + 1; };
    for (std::size_t v = 0; v < n; ++v) {
        const int iv = static_cast<int>(v);
        out.labels[2 * v] = out.labels[2 * v + 1] = g.labels[v];
        out.names[2 * v] = g.name(iv) + ".0";
        out.names[2 * v + 1] = g.name(iv) + ".1";
        out.desire.push_back(Edge::of(head(iv), tail(iv)));
    }
    const auto adj = g.adjacency();
    for (const auto& comp : components(g)) {
        const int start = comp.front();
        if (comp.size() == 1) {
            out.reality.push_back(Edge::of(head(start), tail(start)));
            continue;
        }
        if (comp.size() == 2) {
            const int other = comp[1];
            out.reality.push_back(Edge::of(tail(start), head(other)));
            out.reality.push_back(Edge::of(tail(other), head(start)));
            continue;
        }
        for (int v : comp)
            if (adj[static_cast<std::size_t>(v)].size() != 2)
                throw invariant_error("inflate: component of " + g.name(start) + " is not a cycle");
        int prev = -1, cur = start;
        for (std::size_t step = 0; step < comp.size(); ++step) {
            const auto& nb = adj[static_cast<std::size_t>(cur)];
            const int next = nb[0] != prev ? nb[0] : nb[1];
            out.reality.push_back(Edge::of(tail(cur), head(next)));
            prev = cur;
            cur = next;
        }
    }
    std::sort(out.reality.begin(), out.reality.end());
    return out;
}

}  // namespace ciliate
