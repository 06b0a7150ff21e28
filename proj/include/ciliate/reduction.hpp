#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ciliate/errors.hpp"
#include "ciliate/pointer_set.hpp"
#include "ciliate/strings.hpp"

namespace ciliate {

/// Unordered vertex pair stored as (smaller, larger).
struct Edge {
    int a = 0;
    int b = 0;

    static Edge of(int x, int y) { return x < y ? Edge{x, y} : Edge{y, x}; }
    bool touches(int v) const { return a == v || b == v; }
    int other(int v) const { return v == a ? b : a; }
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// A labelled graph with two edge colours: reality (first set) and desire
/// (second set). The same vertex pair may appear in both sets.
struct ColouredGraph {
    std::vector<int> labels;
    std::vector<Edge> reality;
    std::vector<Edge> desire;
    /// Optional display ids, one per vertex; empty means "v<i>".
    std::vector<std::string> names;

    std::size_t vertex_count() const { return labels.size(); }
    std::string name(int v) const {
        return names.empty() ? "v" + std::to_string(v) : names[static_cast<std::size_t>(v)];
    }
};

/// Connected components (reality and desire edges together), each sorted
/// ascending, ordered by their smallest vertex.
inline std::vector<std::vector<int>> components(const ColouredGraph& g) {
    const auto n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](const Edge& e) {
        const int ra = find(e.a), rb = find(e.b);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    };
    for (const Edge& e : g.reality) unite(e);
    for (const Edge& e : g.desire) unite(e);

    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        const int r = find(static_cast<int>(v));
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(static_cast<int>(v));
    }
    return out;
}

inline std::size_t component_count(const ColouredGraph& g) { return components(g).size(); }

// ---------------------------------------------------------------------------
// Reduction graph of a legal string
// ---------------------------------------------------------------------------

enum class Side { left, right };  // I_i and I'_i

struct RGVertex {
    std::size_t index = 1;  // 1..n
    Side side = Side::left;

    friend constexpr auto operator<=>(const RGVertex&, const RGVertex&) = default;
};

/// R_u without the source/target vertices. Vertex I_i has id 2(i-1) and
/// I'_i has id 2(i-1)+1, so ids sort by (i, side). Reality edge e_i is
/// stored at reality[i-1].
class ReductionGraph {
public:
    ReductionGraph() = default;

    explicit ReductionGraph(const LegalString& u) : n_(u.size()) {
        graph_.labels.resize(2 * n_);
        graph_.names.resize(2 * n_);
        for (std::size_t i = 1; i <= n_; ++i) {
            const int m = u[i - 1].magnitude;
            graph_.labels[static_cast<std::size_t>(id({i, Side::left}))] = m;
            graph_.labels[static_cast<std::size_t>(id({i, Side::right}))] = m;
            graph_.names[static_cast<std::size_t>(id({i, Side::left}))] = "I" + std::to_string(i);
            graph_.names[static_cast<std::size_t>(id({i, Side::right}))] = "Ip" + std::to_string(i);
        }
        for (std::size_t i = 1; i <= n_; ++i) {
            const std::size_t next = i == n_ ? 1 : i + 1;
            graph_.reality.push_back(Edge::of(id({i, Side::right}), id({next, Side::left})));
        }
        // Occurrences i < j of the same magnitude: equal letters are joined
        // straight (I'_i-I_j, I_i-I'_j), complementary letters crossed
        // (I_i-I_j, I'_i-I'_j).
        for (int p : u.domain().members()) {
            const auto [i, j] = u.occurrences(p);
            if (u[i - 1] == u[j - 1]) {
                graph_.desire.push_back(Edge::of(id({i, Side::right}), id({j, Side::left})));
                graph_.desire.push_back(Edge::of(id({i, Side::left}), id({j, Side::right})));
            } else {
                graph_.desire.push_back(Edge::of(id({i, Side::left}), id({j, Side::left})));
                graph_.desire.push_back(Edge::of(id({i, Side::right}), id({j, Side::right})));
            }
        }
        std::sort(graph_.desire.begin(), graph_.desire.end());

        reality_of_.assign(2 * n_, -1);
        desire_of_.assign(2 * n_, -1);
        for (std::size_t k = 0; k < graph_.reality.size(); ++k) {
            reality_of_[static_cast<std::size_t>(graph_.reality[k].a)] = static_cast<int>(k);
            reality_of_[static_cast<std::size_t>(graph_.reality[k].b)] = static_cast<int>(k);
        }
        for (std::size_t k = 0; k < graph_.desire.size(); ++k) {
            desire_of_[static_cast<std::size_t>(graph_.desire[k].a)] = static_cast<int>(k);
            desire_of_[static_cast<std::size_t>(graph_.desire[k].b)] = static_cast<int>(k);
        }
    }

    /// Length of the source string.
    std::size_t n() const { return n_; }
    const ColouredGraph& graph() const { return graph_; }
    const std::vector<Edge>& reality_edges() const { return graph_.reality; }
    const std::vector<Edge>& desire_edges() const { return graph_.desire; }
    int label(int v) const { return graph_.labels[static_cast<std::size_t>(v)]; }

    static int id(RGVertex v) {
        return 2 * static_cast<int>(v.index - 1) + (v.side == Side::right ? 1 : 0);
    }
    static RGVertex vertex(int v) {
        return {static_cast<std::size_t>(v / 2) + 1, v % 2 == 1 ? Side::right : Side::left};
    }

    /// Index into reality_edges() / desire_edges() of the edge holding v.
    int reality_edge_of(int v) const { return reality_of_[static_cast<std::size_t>(v)]; }
    int desire_edge_of(int v) const { return desire_of_[static_cast<std::size_t>(v)]; }

    /// posn(e_i) = i for the reality edge stored at reality_edges()[k], k = i-1.
    std::size_t position_of_edge(std::size_t k) const {
        if (k >= graph_.reality.size()) throw std::out_of_range("reality edge index out of range");
        return k + 1;
    }
    /// posn(v): position of the unique reality edge containing v.
    std::size_t position(RGVertex v) const {
        if (v.index < 1 || v.index > n_) throw std::out_of_range("vertex index out of range 1.." + std::to_string(n_));
        if (v.side == Side::right) return v.index;
        return v.index == 1 ? n_ : v.index - 1;
    }
    std::size_t position(int v) const { return position(vertex(v)); }

private:
    std::size_t n_ = 0;
    ColouredGraph graph_;
    std::vector<int> reality_of_;
    std::vector<int> desire_of_;
};

inline ReductionGraph reduction_graph(const LegalString& u) { return ReductionGraph(u); }

inline std::vector<std::vector<int>> components(const ReductionGraph& rg) { return components(rg.graph()); }
inline std::size_t component_count(const ReductionGraph& rg) { return component_count(rg.graph()); }

// ---------------------------------------------------------------------------
// Root subgraphs
// ---------------------------------------------------------------------------

/// A chain d_2 =r= d_3 =r= ... =r= d_κ of desire edges labelled 2..κ joined
/// by reality edges. `start` is the vertex of d_2 not used by the chain and
/// `end` the vertex of d_κ not used by the chain. For κ = 2 the single
/// desire edge has no internal vertex and start/end are its endpoints.
struct RootSubgraph {
    std::vector<int> desire_chain;        // indices into desire_edges(), labels 2..κ
    std::vector<int> connecting_reality;  // indices into reality_edges(), κ-2 entries
    int start = -1;
    int end = -1;

    int kappa() const { return static_cast<int>(desire_chain.size()) + 1; }

    bool contains_vertex(const ReductionGraph& rg, int v) const {
        const int d = rg.desire_edge_of(v);
        return std::find(desire_chain.begin(), desire_chain.end(), d) != desire_chain.end();
    }
    bool contains_reality_edge(int k) const {
        return std::find(connecting_reality.begin(), connecting_reality.end(), k) != connecting_reality.end();
    }

    friend bool operator==(const RootSubgraph&, const RootSubgraph&) = default;
};

/// All root subgraphs, ordered by (first desire edge, start vertex). Each
/// vertex lies on exactly one reality edge, so a chain is determined by its
/// label-2 desire edge and which of its endpoints stays free. Returns an
/// empty list when dom is not {2..κ}.
inline std::vector<RootSubgraph> find_root_subgraphs(const ReductionGraph& rg) {
    std::vector<RootSubgraph> out;
    const auto& g = rg.graph();
    PointerSet dom;
    for (int l : g.labels) dom.insert(l);
    if (dom.empty()) return out;
    const int kappa = static_cast<int>(dom.size()) + 1;
    if (dom != PointerSet::range(2, kappa)) return out;

    for (std::size_t d2 = 0; d2 < rg.desire_edges().size(); ++d2) {
        const Edge& first = rg.desire_edges()[d2];
        if (rg.label(first.a) != 2) continue;
        if (kappa == 2) {
            out.push_back({{static_cast<int>(d2)}, {}, first.a, first.b});
            continue;
        }
        for (int free_vertex : {first.a, first.b}) {
            RootSubgraph L;
            L.desire_chain.push_back(static_cast<int>(d2));
            L.start = free_vertex;
            int exit = first.other(free_vertex);
            bool ok = true;
            for (int p = 3; p <= kappa && ok; ++p) {
                const int k = rg.reality_edge_of(exit);
                const int entry = rg.reality_edges()[static_cast<std::size_t>(k)].other(exit);
                if (rg.label(entry) != p) {
                    ok = false;
                    break;
                }
                const int d = rg.desire_edge_of(entry);
                L.connecting_reality.push_back(k);
                L.desire_chain.push_back(d);
                exit = rg.desire_edges()[static_cast<std::size_t>(d)].other(entry);
            }
            if (!ok) continue;
            L.end = exit;
            out.push_back(std::move(L));
        }
    }
    return out;
}

/// rspos_{L,k} for 1 <= k <= κ. For κ = 2 the two external positions are
/// returned in ascending order as rspos_1 and rspos_2; they coincide when
/// both endpoints of the desire edge lie on the same reality edge.
inline std::size_t rspos(const ReductionGraph& rg, const RootSubgraph& L, int k) {
    const int kappa = L.kappa();
    if (k < 1 || k > kappa) throw std::out_of_range("rspos index " + std::to_string(k) + " outside 1.." + std::to_string(kappa));
    if (kappa == 2) {
        const auto a = rg.position(L.start), b = rg.position(L.end);
        return k == 1 ? std::min(a, b) : std::max(a, b);
    }
    if (k == 1) return rg.position(L.start);
    if (k == kappa) return rg.position(L.end);
    return rg.position_of_edge(static_cast<std::size_t>(L.connecting_reality[static_cast<std::size_t>(k - 2)]));
}

}  // namespace ciliate
