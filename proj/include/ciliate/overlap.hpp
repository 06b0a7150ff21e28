#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ciliate/arrangement.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/pointer_set.hpp"
#include "ciliate/strings.hpp"

namespace ciliate {

/// Signed simple graph on pointer magnitudes.
class OverlapGraph {
public:
    OverlapGraph() = default;

    /// `positive` must be a subset of `vertices`; edges must join two
    /// distinct vertices. Repeated edges are merged.
    OverlapGraph(const PointerSet& vertices, const PointerSet& positive,
                 const std::vector<std::pair<int, int>>& edges)
        : vertices_(vertices), positive_(positive) {
        if (!positive_.is_subset_of(vertices_)) throw std::invalid_argument("positive vertex missing from vertex set");
        for (int p : vertices_.members()) {
            if (p < 2) throw std::invalid_argument("vertex " + std::to_string(p) + " is not a pointer magnitude");
            adj_[p];
        }
        for (auto [p, q] : edges) {
            if (p == q) throw std::invalid_argument("self-loop on vertex " + std::to_string(p));
            if (!vertices_.contains(p) || !vertices_.contains(q))
                throw std::invalid_argument("edge {" + std::to_string(p) + "," + std::to_string(q) +
                                            "} has an endpoint that is not a vertex");
            adj_[p].insert(q);
            adj_[q].insert(p);
        }
    }

    const PointerSet& domain() const { return vertices_; }
    const PointerSet& positive() const { return positive_; }
    PointerSet negative() const { return vertices_ ^ positive_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool is_positive(int p) const { return positive_.contains(p); }
    char sign(int p) const {
        require_vertex(p);
        return positive_.contains(p) ? '+' : '-';
    }

    /// O_γ(q)
    const PointerSet& neighbours(int q) const {
        require_vertex(q);
        return adj_.at(q);
    }

    bool has_edge(int p, int q) const {
        auto it = adj_.find(p);
        return it != adj_.end() && it->second.contains(q);
    }

    /// Every edge once, as (smaller, larger), in lexicographic order.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (const auto& [p, nb] : adj_)
            for (int q : nb.members())
                if (p < q) out.emplace_back(p, q);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& [p, nb] : adj_) total += nb.size();
        return total / 2;
    }

    // In-place edits used by the graph rewriting rules.
    void remove_vertex(int p) {
        require_vertex(p);
        for (int q : adj_.at(p).members()) adj_.at(q).erase(p);
        adj_.erase(p);
        vertices_.erase(p);
        positive_.erase(p);
    }
    void toggle_edge(int p, int q) {
        require_vertex(p);
        require_vertex(q);
        if (p == q) throw std::invalid_argument("self-loop on vertex " + std::to_string(p));
        adj_.at(p).toggle(q);
        adj_.at(q).toggle(p);
    }
    void flip_sign(int p) {
        require_vertex(p);
        positive_.toggle(p);
    }

    friend bool operator==(const OverlapGraph&, const OverlapGraph&) = default;

private:
    void require_vertex(int p) const {
        if (!vertices_.contains(p)) throw std::invalid_argument("pointer " + std::to_string(p) + " is not a vertex");
    }

    PointerSet vertices_;
    PointerSet positive_;
    std::map<int, PointerSet> adj_;
};

/// γ_u: vertices dom(u), an edge for every overlapping pair, sign + on pos(u).
inline OverlapGraph overlap_graph(const LegalString& u) {
    std::vector<std::pair<int, int>> edges;
    for (int p : u.domain().members())
        for (int q : u.overlap(p).members())
            if (p < q) edges.emplace_back(p, q);
    return OverlapGraph(u.domain(), u.positive(), edges);
}

inline const PointerSet& gamma_overlap_set(const OverlapGraph& g, int q) { return g.neighbours(q); }

/// True when dom(γ) = {2, ..., |dom(γ)|+1}.
inline bool has_contiguous_domain(const OverlapGraph& g) {
    return !g.empty() && g.domain() == PointerSet::range(2, static_cast<int>(g.size()) + 1);
}

inline constexpr int kDefaultRealismKappaCap = 8;

/// Exhaustive search for an arrangement δ with γ_{π_κ(δ)} = γ, visiting
/// arrangements in the order of for_each_arrangement and returning the
/// first hit. Gapped domains are rejected immediately. Throws
/// cap_exceeded_error when κ is above `kappa_cap`.
inline std::optional<MicronuclearArrangement> is_realistic_overlap(const OverlapGraph& g,
                                                                   int kappa_cap = kDefaultRealismKappaCap) {
    if (!has_contiguous_domain(g)) return std::nullopt;
    const int kappa = static_cast<int>(g.size()) + 1;
    if (kappa > kappa_cap)
        throw cap_exceeded_error("realism search needs kappa=" + std::to_string(kappa) + " but the cap is " +
                                 std::to_string(kappa_cap));
    if (kappa > 20) throw cap_exceeded_error("realism search is limited to kappa <= 20");

    // Bit p of a mask stands for pointer p (2..kappa).
    using Mask = std::uint32_t;
    std::vector<Mask> target(static_cast<std::size_t>(kappa) + 1, 0);
    Mask target_positive = 0;
    for (int p = 2; p <= kappa; ++p) {
        for (int q : g.neighbours(p).members()) target[static_cast<std::size_t>(p)] |= Mask{1} << q;
        if (g.is_positive(p)) target_positive |= Mask{1} << p;
    }

    std::vector<int> perm(static_cast<std::size_t>(kappa));
    std::iota(perm.begin(), perm.end(), 1);
    const std::size_t n = 2 * static_cast<std::size_t>(kappa) - 2;
    std::vector<int> mag(n);
    std::vector<bool> bar(n);
    std::vector<Mask> prefix(n + 1);
    std::vector<std::size_t> first(static_cast<std::size_t>(kappa) + 1), second(static_cast<std::size_t>(kappa) + 1);
    const std::uint32_t masks = 1u << kappa;
    std::vector<PointerString> blocks(2 * static_cast<std::size_t>(kappa) + 2);
    for (int k = 1; k <= kappa; ++k)
        for (int inverted = 0; inverted < 2; ++inverted)
            blocks[2 * static_cast<std::size_t>(k) + static_cast<std::size_t>(inverted)] =
                segment_block(kappa, {k, inverted != 0});

    do {
        for (std::uint32_t inv = 0; inv < masks; ++inv) {
            std::size_t at = 0;
            for (std::size_t t = 0; t < perm.size(); ++t) {
                const auto& block = blocks[2 * static_cast<std::size_t>(perm[t]) + ((inv >> t) & 1u)];
                for (const Pointer& x : block) {
                    mag[at] = x.magnitude;
                    bar[at] = x.barred;
                    ++at;
                }
            }
            std::fill(first.begin(), first.end(), 0);
            Mask positive = 0;
            prefix[0] = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto p = static_cast<std::size_t>(mag[i]);
                if (first[p] == 0) {
                    first[p] = i + 1;
                } else {
                    second[p] = i + 1;
                    if (bar[first[p] - 1] != bar[i]) positive |= Mask{1} << p;
                }
                prefix[i + 1] = prefix[i] ^ (Mask{1} << p);
            }
            if (positive != target_positive) continue;
            bool match = true;
            for (int p = 2; p <= kappa && match; ++p) {
                const auto up = static_cast<std::size_t>(p);
                match = (prefix[first[up]] ^ prefix[second[up] - 1]) == target[up];
            }
            if (!match) continue;

            std::vector<Segment> entries;
            for (std::size_t t = 0; t < perm.size(); ++t) entries.push_back({perm[t], ((inv >> t) & 1u) != 0});
            return MicronuclearArrangement(std::move(entries));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

}  // namespace ciliate
