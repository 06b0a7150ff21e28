#pragma once

// O_u calculus checks shared by the unit tests and the acceptance binary.
// Each returns an empty string on success, otherwise a description of the
// first violation.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ciliate/reduction.hpp"
#include "oracles.hpp"

namespace checks {

using namespace ciliate;

inline std::string where(const LegalString& u, const std::string& what) {
    return format_pointer_string(u.letters()) + ": " + what;
}

/// O(i,j) against the substring oracle, transitivity, and O(i,n) = O(0,i).
inline std::string overlap_identities(const LegalString& u) {
    const auto n = u.size();
    for (std::size_t i = 0; i <= n; ++i) {
        if (u.overlap(i, n) != u.overlap(0, i)) return where(u, "O(i,n) != O(0,i) at i=" + std::to_string(i));
        for (std::size_t j = 0; j <= n; ++j) {
            if (u.overlap(i, j) != oracle::substring_overlap(u, i, j))
                return where(u, "O(" + std::to_string(i) + "," + std::to_string(j) + ") differs from the substring oracle");
            for (std::size_t k = 0; k <= n; ++k)
                if ((u.overlap(i, j) ^ u.overlap(j, k)) != u.overlap(i, k))
                    return where(u, "transitivity fails at " + std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(k));
        }
    }
    return {};
}

/// The two endpoints of a desire edge labelled p are separated by
/// O_u(p) ⊕ ({p} if p is positive); I_i and I'_i by {|u_i|}.
inline std::string desire_edge_lemmas(const LegalString& u) {
    const auto rg = reduction_graph(u);
    for (const Edge& e : rg.desire_edges()) {
        const int p = rg.label(e.a);
        PointerSet expected = u.overlap(p);
        if (u.positive().contains(p)) expected.toggle(p);
        if (u.overlap(rg.position(e.a), rg.position(e.b)) != expected)
            return where(u, "desire edge labelled " + std::to_string(p));
    }
    for (std::size_t i = 1; i <= u.size(); ++i)
        if (u.overlap(rg.position(RGVertex{i, Side::left}), rg.position(RGVertex{i, Side::right})) !=
            PointerSet{u[i - 1].magnitude})
            return where(u, "sibling vertices at " + std::to_string(i));
    return {};
}

/// Walking an alternating path from a reality edge, the positions at its
/// two ends differ by the xor of the labels' overlap sets.
inline std::string alternating_paths(const LegalString& u) {
    const auto rg = reduction_graph(u);
    const auto& g = rg.graph();
    std::vector<int> desire_mate(g.vertex_count()), reality_mate(g.vertex_count());
    for (const Edge& e : g.desire) {
        desire_mate[static_cast<std::size_t>(e.a)] = e.b;
        desire_mate[static_cast<std::size_t>(e.b)] = e.a;
    }
    for (const Edge& e : g.reality) {
        reality_mate[static_cast<std::size_t>(e.a)] = e.b;
        reality_mate[static_cast<std::size_t>(e.b)] = e.a;
    }
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
        const auto start = rg.position(static_cast<int>(x));
        PointerSet acc;
        int cur = static_cast<int>(x);
        for (std::size_t steps = 0; steps < g.vertex_count(); ++steps) {
            const int y = desire_mate[static_cast<std::size_t>(cur)];
            const int p = g.labels[static_cast<std::size_t>(y)];
            acc ^= u.overlap(p);
            if (u.positive().contains(p)) acc.toggle(p);
            if (u.overlap(start, rg.position(y)) != acc)
                return where(u, "alternating path from " + g.name(static_cast<int>(x)) + " to " + g.name(y));
            cur = reality_mate[static_cast<std::size_t>(y)];
            if (cur == static_cast<int>(x)) break;
        }
    }
    return {};
}

inline bool is_rooted_instance(const LegalString& u) {
    return !u.empty() && u.has_contiguous_domain() && !find_root_subgraphs(reduction_graph(u)).empty();
}

/// For every root subgraph L: positions of reality edges outside L are
/// pairwise O_u-distinct, exactly one of I_i, I'_i lies on L, and an
/// off-L reality edge joins labels p < q iff the xor condition holds.
inline std::string rooted_lemmas(const LegalString& u) {
    const auto rg = reduction_graph(u);
    const int kappa = u.kappa();
    for (const auto& L : find_root_subgraphs(rg)) {
        std::vector<std::size_t> outside;
        for (std::size_t k = 0; k < rg.reality_edges().size(); ++k)
            if (!L.contains_reality_edge(static_cast<int>(k))) outside.push_back(rg.position_of_edge(k));
        for (auto i : outside)
            for (auto j : outside)
                if (u.overlap(i, j).empty() != (i == j))
                    return where(u, "positions " + std::to_string(i) + " and " + std::to_string(j) +
                                        " outside L are not O-distinct");

        for (std::size_t i = 1; i <= u.size(); ++i)
            if (L.contains_vertex(rg, ReductionGraph::id({i, Side::left})) ==
                L.contains_vertex(rg, ReductionGraph::id({i, Side::right})))
                return where(u, "I_" + std::to_string(i) + " and I'_" + std::to_string(i) + " both on or off L");

        std::set<std::pair<int, int>> off_l;
        for (const Edge& e : rg.reality_edges()) {
            if (L.contains_vertex(rg, e.a) || L.contains_vertex(rg, e.b)) continue;
            const int a = rg.label(e.a), b = rg.label(e.b);
            if (a != b) off_l.insert({std::min(a, b), std::max(a, b)});
        }
        for (int p = 2; p <= kappa; ++p)
            for (int q = p + 1; q <= kappa; ++q) {
                bool holds = false;
                for (unsigned mask = 0; mask < 4; ++mask) {
                    PointerSet P = PointerSet::range(p + 1, q - 1);
                    if (mask & 1u) P.insert(p);
                    if (mask & 2u) P.insert(q);
                    PointerSet lhs;
                    for (int s : P.members()) lhs ^= u.overlap(s);
                    holds = holds || lhs == ((u.positive() & P) ^ PointerSet{p, q});
                }
                if ((off_l.count({p, q}) == 1) != holds)
                    return where(u, "off-L edge {" + std::to_string(p) + "," + std::to_string(q) +
                                        "} disagrees with the xor condition");
            }
    }
    return {};
}

}  // namespace checks
