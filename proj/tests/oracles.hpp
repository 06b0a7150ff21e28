#pragma once

// Slow, definition-level reimplementations used as ground truth in tests.
// Nothing here calls the corresponding library routine.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <compare>
#include <tuple>
#include <utility>
#include <vector>

#include "ciliate/compress.hpp"
#include "ciliate/reduction.hpp"
#include "ciliate/strings.hpp"

namespace oracle {

using ciliate::Edge;
using ciliate::LegalString;
using ciliate::PointerSet;

/// O_u(i,j): magnitudes with exactly one occurrence among letters i+1..j
/// (positions i <= j, letters 1-based).
inline PointerSet substring_overlap(const LegalString& u, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    std::map<int, int> count;
    for (std::size_t k = i + 1; k <= j; ++k) ++count[u[k - 1].magnitude];
    PointerSet out;
    for (auto [p, c] : count)
        if (c % 2 == 1) out.insert(p);
    return out;
}

inline std::pair<std::size_t, std::size_t> occurrences(const LegalString& u, int p) {
    std::vector<std::size_t> at;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k].magnitude == p) at.push_back(k + 1);
    return {at.at(0), at.at(1)};
}

/// p and q overlap iff their occurrence intervals interleave.
inline bool interleave(const LegalString& u, int p, int q) {
    const auto [ip, jp] = occurrences(u, p);
    const auto [iq, jq] = occurrences(u, q);
    return (ip < iq && iq < jp && jp < jq) || (iq < ip && ip < jq && jq < jp);
}

inline PointerSet interleave_set(const LegalString& u, int p) {
    PointerSet out;
    for (int q : u.domain().members())
        if (q != p && interleave(u, p, q)) out.insert(q);
    return out;
}

/// Vertex-set components of a coloured graph by repeated relaxation.
inline std::vector<std::size_t> component_sizes(const ciliate::ColouredGraph& g) {
    const auto n = g.vertex_count();
    std::vector<int> colour(n);
    for (std::size_t v = 0; v < n; ++v) colour[v] = static_cast<int>(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto* set : {&g.reality, &g.desire})
            for (const Edge& e : *set) {
                auto& a = colour[static_cast<std::size_t>(e.a)];
                auto& b = colour[static_cast<std::size_t>(e.b)];
                if (a != b) {
                    a = b = std::min(a, b);
                    changed = true;
                }
            }
    }
    std::map<int, std::size_t> size;
    for (int c : colour) ++size[c];
    std::vector<std::size_t> out;
    for (auto [c, s] : size) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

/// cps straight from the set-based definition.
inline std::set<std::pair<int, int>> cps_edges(const ciliate::ColouredGraph& g) {
    std::set<std::pair<int, int>> out;
    const auto& d = g.desire;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i == j) continue;
            for (const Edge& r : g.reality) {
                const bool hit = (d[i].touches(r.a) && d[j].touches(r.b)) || (d[i].touches(r.b) && d[j].touches(r.a));
                if (hit) out.insert({static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))});
            }
        }
    return out;
}

/// Root subgraphs as (desire edges d_2..d_κ, free endpoint of d_2), found by
/// trying every choice of desire edge per label and every orientation.
struct Chain {
    std::vector<Edge> desire;  // d_2 .. d_κ
    int start = -1;
    int end = -1;
    std::vector<Edge> connecting;
    friend auto operator<=>(const Chain&, const Chain&) = default;
};

inline std::vector<Chain> root_chains(const ciliate::ColouredGraph& g, int kappa) {
    std::map<int, std::vector<Edge>> by_label;
    for (const Edge& e : g.desire) by_label[g.labels[static_cast<std::size_t>(e.a)]].push_back(e);
    for (int p = 2; p <= kappa; ++p)
        if (by_label[p].size() != 2) return {};
    std::set<std::pair<int, int>> reality;
    for (const Edge& e : g.reality) reality.insert({e.a, e.b});
    auto joined = [&](int x, int y) { return reality.count({std::min(x, y), std::max(x, y)}) > 0; };

    std::set<Chain> found;
    const int links = kappa - 1;
    for (unsigned pick = 0; pick < (1u << links); ++pick)
        for (unsigned orient = 0; orient < (1u << links); ++orient) {
            Chain c;
            std::vector<std::pair<int, int>> oriented;  // (entry, exit)
            for (int t = 0; t < links; ++t) {
                const Edge e = by_label[t + 2][(pick >> t) & 1u];
                c.desire.push_back(e);
                oriented.push_back(((orient >> t) & 1u) ? std::pair{e.b, e.a} : std::pair{e.a, e.b});
            }
            bool ok = true;
            for (int t = 0; t + 1 < links && ok; ++t) {
                ok = joined(oriented[static_cast<std::size_t>(t)].second, oriented[static_cast<std::size_t>(t) + 1].first);
                if (ok)
                    c.connecting.push_back(Edge::of(oriented[static_cast<std::size_t>(t)].second,
                                                    oriented[static_cast<std::size_t>(t) + 1].first));
            }
            if (!ok) continue;
            c.start = oriented.front().first;
            c.end = oriented.back().second;
            if (kappa == 2) std::tie(c.start, c.end) = std::pair{std::min(c.start, c.end), std::max(c.start, c.end)};
            found.insert(c);
        }
    return {found.begin(), found.end()};
}

/// Random simple labelled graph with every degree <= 2.
inline ciliate::LabelledGraph random_degree2_graph(std::mt19937_64& rng, int n, int max_label) {
    ciliate::LabelledGraph g;
    std::uniform_int_distribution<int> label(2, max_label);
    for (int v = 0; v < n; ++v) g.labels.push_back(label(rng));
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> vertex(0, std::max(0, n - 1));
    const int attempts = 2 * n;
    for (int t = 0; t < attempts && n > 1; ++t) {
        const int a = vertex(rng), b = vertex(rng);
        if (a == b || degree[static_cast<std::size_t>(a)] >= 2 || degree[static_cast<std::size_t>(b)] >= 2) continue;
        const auto before = g.edges.size();
        g.add_edge(a, b);
        if (g.edges.size() != before) {
            ++degree[static_cast<std::size_t>(a)];
            ++degree[static_cast<std::size_t>(b)];
        }
    }
    return g;
}

/// Same graph with vertex v renamed perm[v].
inline ciliate::LabelledGraph permute(const ciliate::LabelledGraph& g, const std::vector<int>& perm) {
    ciliate::LabelledGraph out;
    out.labels.resize(g.labels.size());
    for (std::size_t v = 0; v < g.labels.size(); ++v) out.labels[static_cast<std::size_t>(perm[v])] = g.labels[v];
    for (const Edge& e : g.edges) out.add_edge(perm[static_cast<std::size_t>(e.a)], perm[static_cast<std::size_t>(e.b)]);
    return out;
}

inline ciliate::ColouredGraph permute(const ciliate::ColouredGraph& g, const std::vector<int>& perm) {
    ciliate::ColouredGraph out;
    out.labels.resize(g.labels.size());
    for (std::size_t v = 0; v < g.labels.size(); ++v) out.labels[static_cast<std::size_t>(perm[v])] = g.labels[v];
    auto map = [&](const Edge& e) { return Edge::of(perm[static_cast<std::size_t>(e.a)], perm[static_cast<std::size_t>(e.b)]); };
    for (const Edge& e : g.reality) out.reality.push_back(map(e));
    for (const Edge& e : g.desire) out.desire.push_back(map(e));
    return out;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

}  // namespace oracle
