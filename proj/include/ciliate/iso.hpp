#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ciliate/compress.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/reduction.hpp"

namespace ciliate {

/// Sorted multiset of per-component codes. Two graphs of the supported
/// classes are isomorphic iff their canonical forms compare equal.
///
/// Component codes:
///   V(l)        isolated vertex
///   P(l1,...)   path, lexicographically smaller of the two directions
///   C(l1,...)   cycle, least rotation/reflection
///   A(l1,...)   alternating cycle of a 2-edge coloured graph, read from a
///               vertex along its reality edge first, least over all starts
struct CanonicalForm {
    std::vector<std::string> codes;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < codes.size(); ++i) {
            if (i) out += ' ';
            out += codes[i];
        }
        return out;
    }

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

inline std::string component_code(char shape, const std::vector<int>& labels) {
    std::string out(1, shape);
    out += '(';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(labels[i]);
    }
    return out + ')';
}

}  // namespace detail

/// Canonical form of a labelled graph whose vertices all have degree <= 2.
inline CanonicalForm canonical_labelled(const LabelledGraph& g) {
    const auto adj = g.adjacency();
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (adj[v].size() > 2)
            throw std::invalid_argument("canonical_labelled: vertex " + g.name(static_cast<int>(v)) +
                                        " has degree " + std::to_string(adj[v].size()) + " > 2");

    auto label = [&](int v) { return g.labels[static_cast<std::size_t>(v)]; };
    // Labels met walking from `from` through `towards` until the walk
    // dead-ends or returns to `from`.
    auto walk = [&](int from, int towards) {
        std::vector<int> seq{label(from)};
        int prev = from, cur = towards;
        while (cur >= 0 && cur != from) {
            seq.push_back(label(cur));
            const auto& nb = adj[static_cast<std::size_t>(cur)];
            int next = -1;
            for (int w : nb)
                if (w != prev) next = w;
            prev = cur;
            cur = next;
        }
        return seq;
    };

    CanonicalForm form;
    for (const auto& comp : components(g)) {
        if (comp.size() == 1) {
            form.codes.push_back(detail::component_code('V', {label(comp.front())}));
            continue;
        }
        const bool cycle = std::all_of(comp.begin(), comp.end(),
                                       [&](int v) { return adj[static_cast<std::size_t>(v)].size() == 2; });
        std::vector<int> best;
        if (cycle) {
            for (int v : comp)
                for (int w : adj[static_cast<std::size_t>(v)]) {
                    auto seq = walk(v, w);
                    if (best.empty() || seq < best) best = std::move(seq);
                }
            form.codes.push_back(detail::component_code('C', best));
        } else {
            for (int v : comp)
                if (adj[static_cast<std::size_t>(v)].size() == 1) {
                    auto seq = walk(v, adj[static_cast<std::size_t>(v)].front());
                    if (best.empty() || seq < best) best = std::move(seq);
                }
            form.codes.push_back(detail::component_code('P', best));
        }
    }
    std::sort(form.codes.begin(), form.codes.end());
    return form;
}

/// Canonical form of a 2-edge coloured graph in which every vertex lies on
/// exactly one reality edge and exactly one desire edge (a disjoint union
/// of alternating cycles, as for every reduction graph).
inline CanonicalForm canonical_2edge(const ColouredGraph& g) {
    const auto n = g.vertex_count();
    std::vector<int> reality_mate(n, -1), desire_mate(n, -1);
    auto bind = [&](std::vector<int>& mate, const Edge& e, const char* colour) {
        for (int v : {e.a, e.b}) {
            if (mate[static_cast<std::size_t>(v)] >= 0)
                throw std::invalid_argument(std::string("canonical_2edge: vertex ") + g.name(v) + " has two " +
                                            colour + " edges");
            mate[static_cast<std::size_t>(v)] = e.other(v);
        }
    };
    for (const Edge& e : g.reality) bind(reality_mate, e, "reality");
    for (const Edge& e : g.desire) bind(desire_mate, e, "desire");
    for (std::size_t v = 0; v < n; ++v)
        if (reality_mate[v] < 0 || desire_mate[v] < 0)
            throw std::invalid_argument("canonical_2edge: vertex " + g.name(static_cast<int>(v)) +
                                        " is missing a reality or desire edge");

    CanonicalForm form;
    for (const auto& comp : components(g)) {
        std::vector<int> best;
        for (int s : comp) {
            std::vector<int> seq;
            int cur = s;
            do {
                seq.push_back(g.labels[static_cast<std::size_t>(cur)]);
                cur = reality_mate[static_cast<std::size_t>(cur)];
                seq.push_back(g.labels[static_cast<std::size_t>(cur)]);
                cur = desire_mate[static_cast<std::size_t>(cur)];
            } while (cur != s);
            if (best.empty() || seq < best) best = std::move(seq);
        }
        form.codes.push_back(detail::component_code('A', best));
    }
    std::sort(form.codes.begin(), form.codes.end());
    return form;
}

inline CanonicalForm canonical_2edge(const ReductionGraph& rg) { return canonical_2edge(rg.graph()); }

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

inline constexpr std::size_t kBruteForceIsoCap = 10;

namespace detail {

/// Backtracking bijection search over `n` vertices. `layers` holds one
/// adjacency matrix pair per edge colour.
inline bool brute_force_match(const std::vector<int>& labels1, const std::vector<int>& labels2,
                              const std::vector<std::vector<std::vector<bool>>>& layers1,
                              const std::vector<std::vector<std::vector<bool>>>& layers2) {
    const std::size_t n = labels1.size();
    if (labels2.size() != n) return false;
    if (n > kBruteForceIsoCap)
        throw cap_exceeded_error("brute_force_isomorphic supports at most " + std::to_string(kBruteForceIsoCap) +
                                 " vertices");
    {
        auto a = labels1, b = labels2;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);

    auto extend = [&](auto&& self, std::size_t v) -> bool {
        if (v == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || labels1[v] != labels2[w]) continue;
            bool ok = true;
            for (std::size_t c = 0; c < layers1.size() && ok; ++c) {
                if (layers1[c][v][v] != layers2[c][w][w]) ok = false;
                for (std::size_t u = 0; u < v && ok; ++u)
                    if (layers1[c][v][u] != layers2[c][w][static_cast<std::size_t>(image[u])]) ok = false;
            }
            if (!ok) continue;
            image[v] = static_cast<int>(w);
            used[w] = true;
            if (self(self, v + 1)) return true;
            used[w] = false;
            image[v] = -1;
        }
        return false;
    };
    return extend(extend, 0);
}

inline std::vector<std::vector<bool>> matrix_of(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (const Edge& e : edges) {
        m[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] = true;
        m[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] = true;
    }
    return m;
}

}  // namespace detail

/// Exhaustive label-preserving bijection search; at most 10 vertices.
inline bool brute_force_isomorphic(const LabelledGraph& g1, const LabelledGraph& g2) {
    if (g1.edges.size() != g2.edges.size()) return false;
    return detail::brute_force_match(g1.labels, g2.labels, {detail::matrix_of(g1.vertex_count(), g1.edges)},
                                     {detail::matrix_of(g2.vertex_count(), g2.edges)});
}

/// Exhaustive search that also preserves the two edge colours.
inline bool brute_force_isomorphic(const ColouredGraph& g1, const ColouredGraph& g2) {
    if (g1.reality.size() != g2.reality.size() || g1.desire.size() != g2.desire.size()) return false;
    const auto n1 = g1.vertex_count(), n2 = g2.vertex_count();
    return detail::brute_force_match(
        g1.labels, g2.labels, {detail::matrix_of(n1, g1.reality), detail::matrix_of(n1, g1.desire)},
        {detail::matrix_of(n2, g2.reality), detail::matrix_of(n2, g2.desire)});
}

}  // namespace ciliate
