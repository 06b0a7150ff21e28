#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ciliate/direct.hpp"
#include "ciliate/errors.hpp"
#include "ciliate/overlap.hpp"
#include "ciliate/reduction.hpp"
#include "ciliate/strings.hpp"

namespace ciliate {

enum class RuleKind : unsigned { negative = 1, positive = 2, double_ = 4 };

/// A subset of {negative, positive, double} rules. Printed as e.g.
/// "{Gnr,Gdr}" on the graph side and "{Snr,Sdr}" on the string side.
class RuleSet {
public:
    constexpr RuleSet() = default;
    constexpr explicit RuleSet(unsigned bits) : bits_(bits & 7u) {}
    static constexpr RuleSet all() { return RuleSet(7u); }
    static constexpr RuleSet none() { return RuleSet(0u); }

    /// Accepts names like "Gnr,Gpr", "{Snr, Sdr}", "nr pr dr"; "{}" or "" is
    /// the empty set.
    static RuleSet parse(std::string_view text) {
        unsigned bits = 0;
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) return;
            std::string t;
            for (char c : tok) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (t.size() == 3 && (t[0] == 'g' || t[0] == 's')) t.erase(0, 1);
            if (t == "nr")
                bits |= 1u;
            else if (t == "pr")
                bits |= 2u;
            else if (t == "dr")
                bits |= 4u;
            else
                throw parse_error("unknown rule name '" + tok + "'");
            tok.clear();
        };
        for (char c : text) {
            if (c == ',' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c)))
                flush();
            else
                tok += c;
        }
        flush();
        return RuleSet(bits);
    }

    constexpr bool contains(RuleKind k) const { return (bits_ & static_cast<unsigned>(k)) != 0; }
    constexpr unsigned bits() const { return bits_; }

    std::string to_string(char side) const {
        std::string out = "{";
        const char* names[] = {"nr", "pr", "dr"};
        bool first = true;
        for (unsigned b = 0; b < 3; ++b)
            if (bits_ & (1u << b)) {
                if (!first) out += ',';
                out += side;
                out += names[b];
                first = false;
            }
        return out + "}";
    }

    friend constexpr bool operator==(RuleSet, RuleSet) = default;

private:
    unsigned bits_ = 0;
};

/// The eight subsets in the order {}, {nr}, {pr}, {nr,pr}, {dr}, ...
inline std::vector<RuleSet> all_rule_sets() {
    std::vector<RuleSet> out;
    for (unsigned b = 0; b < 8; ++b) out.emplace_back(b);
    return out;
}

namespace detail {

inline std::string rule_name(char side, RuleKind kind, int p, int q) {
    std::string out(1, side);
    switch (kind) {
        case RuleKind::negative: return out + "nr_" + std::to_string(p);
        case RuleKind::positive: return out + "pr_" + std::to_string(p);
        case RuleKind::double_: return out + "dr_{" + std::to_string(p) + "," + std::to_string(q) + "}";
    }
    return out;
}

inline void parse_rule_name(std::string_view tok, char side, RuleKind& kind, int& p, int& q) {
    auto fail = [&] { throw parse_error("malformed rule '" + std::string(tok) + "'"); };
    if (tok.size() < 5 || tok[0] != side || tok[2] != 'r' || tok[3] != '_') fail();
    if (tok[1] == 'n')
        kind = RuleKind::negative;
    else if (tok[1] == 'p')
        kind = RuleKind::positive;
    else if (tok[1] == 'd')
        kind = RuleKind::double_;
    else
        fail();
    std::string rest(tok.substr(4));
    auto number = [&](const std::string& s) {
        if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), ::isdigit)) fail();
        return std::stoi(s);
    };
    if (kind == RuleKind::double_) {
        if (rest.size() < 5 || rest.front() != '{' || rest.back() != '}') fail();
        const auto comma = rest.find(',');
        if (comma == std::string::npos) fail();
        p = number(rest.substr(1, comma - 1));
        q = number(rest.substr(comma + 1, rest.size() - comma - 2));
    } else {
        p = number(rest);
        q = 0;
    }
}

template <typename Rule>
std::vector<Rule> parse_rule_sequence(std::string_view text) {
    std::vector<Rule> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.push_back(Rule::parse(text.substr(i, j - i)));
        i = j;
    }
    return out;
}

template <typename Rule>
std::string format_rule_sequence(const std::vector<Rule>& rules) {
    std::string out;
    for (const auto& r : rules) {
        if (!out.empty()) out += ' ';
        out += r.to_string();
    }
    return out;
}

}  // namespace detail

// ===========================================================================
// String pointer reduction system
//
//   snr_p    u1 p p u2            -> u1 u2
//   spr_p    u1 p u2 p̄ u3         -> u1 ū2 u3
//   sdr_p,q  u1 p u2 q u3 p u4 q u5 -> u1 u4 u3 u2 u5
//
// p, q range over barred and unbarred pointers; sdr names p as the pointer
// whose first occurrence comes first.
// ===========================================================================

struct StringRule {
    RuleKind kind = RuleKind::negative;
    int p = 0;
    int q = 0;

    std::string to_string() const { return detail::rule_name('s', kind, p, q); }
    static StringRule parse(std::string_view tok) {
        StringRule r;
        detail::parse_rule_name(tok, 's', r.kind, r.p, r.q);
        return r;
    }
    friend constexpr bool operator==(const StringRule&, const StringRule&) = default;
};

namespace detail {

struct Occurrence {
    std::size_t first = 0;  // 0-based
    std::size_t second = 0;
};

inline std::vector<Occurrence> occurrence_table(PointerView u) {
    int top = 0;
    for (const Pointer& x : u) top = std::max(top, x.magnitude);
    std::vector<Occurrence> occ(static_cast<std::size_t>(top) + 1, {SIZE_MAX, SIZE_MAX});
    for (std::size_t i = 0; i < u.size(); ++i) {
        auto& o = occ[static_cast<std::size_t>(u[i].magnitude)];
        (o.first == SIZE_MAX ? o.first : o.second) = i;
    }
    return occ;
}

inline void string_rules_into(PointerView u, RuleSet allowed, std::vector<StringRule>& out) {
    out.clear();
    const auto occ = occurrence_table(u);
    std::vector<int> present;
    for (std::size_t p = 0; p < occ.size(); ++p)
        if (occ[p].first != SIZE_MAX) present.push_back(static_cast<int>(p));
    auto same = [&](int p) {
        const auto& o = occ[static_cast<std::size_t>(p)];
        return u[o.first] == u[o.second];
    };
    if (allowed.contains(RuleKind::negative))
        for (int p : present) {
            const auto& o = occ[static_cast<std::size_t>(p)];
            if (o.second == o.first + 1 && same(p)) out.push_back({RuleKind::negative, p, 0});
        }
    if (allowed.contains(RuleKind::positive))
        for (int p : present)
            if (!same(p)) out.push_back({RuleKind::positive, p, 0});
    if (allowed.contains(RuleKind::double_))
        for (int p : present)
            for (int q : present) {
                if (p == q || !same(p) || !same(q)) continue;
                const auto &op = occ[static_cast<std::size_t>(p)], &oq = occ[static_cast<std::size_t>(q)];
                if (op.first < oq.first && oq.first < op.second && op.second < oq.second)
                    out.push_back({RuleKind::double_, p, q});
            }
}

inline bool string_rule_applicable(PointerView u, const StringRule& r) {
    std::vector<StringRule> rules;
    string_rules_into(u, RuleSet::all(), rules);
    return std::find(rules.begin(), rules.end(), r) != rules.end();
}

/// Assumes the rule is applicable.
inline PointerString apply_string_rule_unchecked(PointerView u, const StringRule& r) {
    const auto occ = occurrence_table(u);
    auto slice = [&](std::size_t from, std::size_t to, PointerString& out) {  // [from, to)
        for (std::size_t i = from; i < to; ++i) out.push_back(u[i]);
    };
    PointerString out;
    out.reserve(u.size());
    const auto& op = occ[static_cast<std::size_t>(r.p)];
    switch (r.kind) {
        case RuleKind::negative:
            slice(0, op.first, out);
            slice(op.second + 1, u.size(), out);
            break;
        case RuleKind::positive: {
            slice(0, op.first, out);
            for (std::size_t i = op.second; i-- > op.first + 1;) out.push_back(u[i].bar());
            slice(op.second + 1, u.size(), out);
            break;
        }
        case RuleKind::double_: {
            const auto& oq = occ[static_cast<std::size_t>(r.q)];
            slice(0, op.first, out);                // u1
            slice(op.second + 1, oq.second, out);   // u4
            slice(oq.first + 1, op.second, out);    // u3
            slice(op.first + 1, oq.first, out);     // u2
            slice(oq.second + 1, u.size(), out);    // u5
            break;
        }
    }
    return out;
}

}  // namespace detail

inline std::vector<StringRule> applicable_string_rules(const LegalString& u, RuleSet allowed = RuleSet::all()) {
    std::vector<StringRule> out;
    detail::string_rules_into(u.letters(), allowed, out);
    return out;
}

inline LegalString apply_string_rule(const LegalString& u, const StringRule& r) {
    if (!detail::string_rule_applicable(u.letters(), r))
        throw std::invalid_argument(r.to_string() + " is not applicable to " + format_pointer_string(u.letters()));
    return LegalString(detail::apply_string_rule_unchecked(u.letters(), r));
}

inline std::vector<StringRule> parse_string_rules(std::string_view text) {
    return detail::parse_rule_sequence<StringRule>(text);
}
inline std::string format_string_rules(const std::vector<StringRule>& rules) {
    return detail::format_rule_sequence(rules);
}

// ===========================================================================
// Graph pointer reduction system
//
//   gnr_p    p negative and isolated: delete p
//   gpr_p    p positive: complement the edges inside N(p), flip the signs
//            of N(p), delete p
//   gdr_p,q  p, q negative and adjacent: toggle {x,y} when
//            [x∈N(p) ∧ y∈N(q)] + [x∈N(q) ∧ y∈N(p)] is odd, delete p and q
// ===========================================================================

struct GraphRule {
    RuleKind kind = RuleKind::negative;
    int p = 0;
    int q = 0;  // gdr only, p < q

    std::string to_string() const { return detail::rule_name('g', kind, p, q); }
    static GraphRule parse(std::string_view tok) {
        GraphRule r;
        detail::parse_rule_name(tok, 'g', r.kind, r.p, r.q);
        if (r.kind == RuleKind::double_ && r.q < r.p) std::swap(r.p, r.q);
        return r;
    }
    friend constexpr bool operator==(const GraphRule&, const GraphRule&) = default;
};

inline std::vector<GraphRule> applicable_graph_rules(const OverlapGraph& g, RuleSet allowed = RuleSet::all()) {
    std::vector<GraphRule> out;
    const auto vertices = g.domain().members();
    if (allowed.contains(RuleKind::negative))
        for (int p : vertices)
            if (!g.is_positive(p) && g.neighbours(p).empty()) out.push_back({RuleKind::negative, p, 0});
    if (allowed.contains(RuleKind::positive))
        for (int p : vertices)
            if (g.is_positive(p)) out.push_back({RuleKind::positive, p, 0});
    if (allowed.contains(RuleKind::double_))
        for (const auto& [p, q] : g.edges())
            if (!g.is_positive(p) && !g.is_positive(q)) out.push_back({RuleKind::double_, p, q});
    return out;
}

inline bool graph_rule_applicable(const OverlapGraph& g, const GraphRule& r) {
    auto vertex = [&](int p) { return g.domain().contains(p); };
    switch (r.kind) {
        case RuleKind::negative: return vertex(r.p) && !g.is_positive(r.p) && g.neighbours(r.p).empty();
        case RuleKind::positive: return vertex(r.p) && g.is_positive(r.p);
        case RuleKind::double_:
            return vertex(r.p) && vertex(r.q) && r.p != r.q && !g.is_positive(r.p) && !g.is_positive(r.q) &&
                   g.has_edge(r.p, r.q);
    }
    return false;
}

inline OverlapGraph apply_graph_rule(const OverlapGraph& g, const GraphRule& r) {
    if (!graph_rule_applicable(g, r)) throw std::invalid_argument(r.to_string() + " is not applicable");
    OverlapGraph out = g;
    switch (r.kind) {
        case RuleKind::negative: out.remove_vertex(r.p); break;
        case RuleKind::positive: {
            const auto nb = g.neighbours(r.p).members();
            for (std::size_t i = 0; i < nb.size(); ++i) {
                out.flip_sign(nb[i]);
                for (std::size_t j = i + 1; j < nb.size(); ++j) out.toggle_edge(nb[i], nb[j]);
            }
            out.remove_vertex(r.p);
            break;
        }
        case RuleKind::double_: {
            PointerSet np = g.neighbours(r.p), nq = g.neighbours(r.q);
            np.erase(r.q);
            nq.erase(r.p);
            const auto touched = (np | nq).members();
            for (std::size_t i = 0; i < touched.size(); ++i)
                for (std::size_t j = i + 1; j < touched.size(); ++j) {
                    const int x = touched[i], y = touched[j];
                    const int hits = (np.contains(x) && nq.contains(y) ? 1 : 0) + (nq.contains(x) && np.contains(y) ? 1 : 0);
                    if (hits % 2 == 1) out.toggle_edge(x, y);
                }
            out.remove_vertex(r.p);
            out.remove_vertex(r.q);
            break;
        }
    }
    return out;
}

inline std::vector<GraphRule> parse_graph_rules(std::string_view text) {
    return detail::parse_rule_sequence<GraphRule>(text);
}
inline std::string format_graph_rules(const std::vector<GraphRule>& rules) {
    return detail::format_rule_sequence(rules);
}

// ===========================================================================
// Exhaustive search
// ===========================================================================

inline constexpr int kDefaultStringSearchCap = 6;  // |dom(u)|
inline constexpr int kDefaultGraphSearchCap = 6;   // |dom(γ)|, i.e. κ <= 7

/// Bit c set: some successful reduction uses exactly c negative rules.
using NegativeCountMask = std::uint32_t;

inline std::vector<int> mask_members(NegativeCountMask m) {
    std::vector<int> out;
    for (int c = 0; c < 32; ++c)
        if ((m >> c) & 1u) out.push_back(c);
    return out;
}

namespace detail {

/// Memo key invariant under renaming magnitudes in order of first appearance.
inline std::string string_key(PointerView u) {
    std::vector<int> rename(static_cast<std::size_t>(kMaxMagnitude) + 1, 0);
    int next = 0;
    std::string key;
    key.reserve(u.size());
    for (const Pointer& x : u) {
        auto& r = rename[static_cast<std::size_t>(x.magnitude)];
        if (r == 0) r = ++next;
        key += static_cast<char>(2 * r + (x.barred ? 1 : 0));
    }
    return key;
}

/// Memo key invariant under order-preserving renaming of vertices.
inline std::string graph_key(const OverlapGraph& g) {
    const auto vs = g.domain().members();
    std::string key;
    key.reserve(vs.size() * (vs.size() + 1));
    for (int p : vs) {
        key += g.is_positive(p) ? '+' : '-';
        for (int q : vs) key += g.has_edge(p, q) ? '1' : '0';
    }
    return key;
}

class StringSearch {
public:
    explicit StringSearch(RuleSet allowed) : allowed_(allowed) {}

    NegativeCountMask counts(const PointerString& u) {
        if (u.empty()) return 1u;
        const auto key = string_key(u);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        NegativeCountMask acc = 0;
        std::vector<StringRule> rules;
        string_rules_into(u, allowed_, rules);
        for (const auto& r : rules) {
            const NegativeCountMask sub = counts(apply_string_rule_unchecked(u, r));
            acc |= r.kind == RuleKind::negative ? sub << 1 : sub;
        }
        memo_.emplace(key, acc);
        return acc;
    }

    bool visit(const PointerString& u, std::vector<StringRule>& prefix,
               const std::function<bool(const std::vector<StringRule>&)>& visitor) {
        if (u.empty()) return visitor(prefix);
        std::vector<StringRule> rules;
        string_rules_into(u, allowed_, rules);
        for (const auto& r : rules) {
            auto next = apply_string_rule_unchecked(u, r);
            if (counts(next) == 0) continue;
            prefix.push_back(r);
            const bool go_on = visit(next, prefix, visitor);
            prefix.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

private:
    RuleSet allowed_;
    std::unordered_map<std::string, NegativeCountMask> memo_;
};

class GraphSearch {
public:
    explicit GraphSearch(RuleSet allowed) : allowed_(allowed) {}

    NegativeCountMask counts(const OverlapGraph& g) {
        if (g.empty()) return 1u;
        const auto key = graph_key(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        NegativeCountMask acc = 0;
        for (const auto& r : applicable_graph_rules(g, allowed_)) {
            const NegativeCountMask sub = counts(apply_graph_rule(g, r));
            acc |= r.kind == RuleKind::negative ? sub << 1 : sub;
        }
        memo_.emplace(key, acc);
        return acc;
    }

    bool visit(const OverlapGraph& g, std::vector<GraphRule>& prefix,
               const std::function<bool(const std::vector<GraphRule>&)>& visitor) {
        if (g.empty()) return visitor(prefix);
        for (const auto& r : applicable_graph_rules(g, allowed_)) {
            auto next = apply_graph_rule(g, r);
            if (counts(next) == 0) continue;
            prefix.push_back(r);
            const bool go_on = visit(next, prefix, visitor);
            prefix.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

private:
    RuleSet allowed_;
    std::unordered_map<std::string, NegativeCountMask> memo_;
};

inline void check_cap(std::size_t size, int cap, const char* what) {
    if (static_cast<int>(size) > cap)
        throw cap_exceeded_error(std::string(what) + " search needs |dom|=" + std::to_string(size) +
                                 " but the cap is " + std::to_string(cap));
}

}  // namespace detail

/// Negative-rule counts realised by the successful reductions of u using
/// only rules from `allowed`; zero when u has no successful reduction.
inline NegativeCountMask string_negative_counts(const LegalString& u, RuleSet allowed = RuleSet::all(),
                                                int cap = kDefaultStringSearchCap) {
    detail::check_cap(u.domain().size(), cap, "string");
    detail::StringSearch search(allowed);
    return search.counts(u.letters());
}

/// Calls `visitor` with every successful reduction of u (depth-first, rules in
/// applicable_string_rules order). Dead branches are pruned with a memoized
/// reachability test. The visitor returns false to stop.
inline void for_each_successful_string_reduction(const LegalString& u, RuleSet allowed,
                                                 const std::function<bool(const std::vector<StringRule>&)>& visitor,
                                                 int cap = kDefaultStringSearchCap) {
    detail::check_cap(u.domain().size(), cap, "string");
    detail::StringSearch search(allowed);
    if (search.counts(u.letters()) == 0) return;
    std::vector<StringRule> prefix;
    search.visit(u.letters(), prefix, visitor);
}

inline std::vector<std::vector<StringRule>> successful_string_reductions(const LegalString& u,
                                                                         RuleSet allowed = RuleSet::all(),
                                                                         int cap = kDefaultStringSearchCap) {
    std::vector<std::vector<StringRule>> out;
    for_each_successful_string_reduction(
        u, allowed, [&](const std::vector<StringRule>& seq) {
            out.push_back(seq);
            return true;
        },
        cap);
    return out;
}

inline NegativeCountMask graph_negative_counts(const OverlapGraph& g, RuleSet allowed = RuleSet::all(),
                                               int cap = kDefaultGraphSearchCap) {
    detail::check_cap(g.size(), cap, "graph");
    detail::GraphSearch search(allowed);
    return search.counts(g);
}

inline void for_each_successful_graph_reduction(const OverlapGraph& g, RuleSet allowed,
                                                const std::function<bool(const std::vector<GraphRule>&)>& visitor,
                                                int cap = kDefaultGraphSearchCap) {
    detail::check_cap(g.size(), cap, "graph");
    detail::GraphSearch search(allowed);
    if (search.counts(g) == 0) return;
    std::vector<GraphRule> prefix;
    search.visit(g, prefix, visitor);
}

/// Exhaustive decision: does γ reduce to the empty graph using only `allowed`?
inline bool successful_in(const OverlapGraph& g, RuleSet allowed, int cap = kDefaultGraphSearchCap) {
    return graph_negative_counts(g, allowed, cap) != 0;
}

/// Applies `rules` one by one, throwing std::invalid_argument at the first
/// inapplicable step. Returns the final graph.
inline OverlapGraph apply_graph_rules(OverlapGraph g, const std::vector<GraphRule>& rules) {
    for (const auto& r : rules) g = apply_graph_rule(g, r);
    return g;
}

inline LegalString apply_string_rules(LegalString u, const std::vector<StringRule>& rules) {
    for (const auto& r : rules) u = apply_string_rule(u, r);
    return u;
}

// ===========================================================================
// Closed forms for realistic inputs
// ===========================================================================

/// Components of R_u minus one. The empty string is rejected.
inline int predicted_negative_rule_count(const LegalString& u) {
    if (u.empty()) throw std::invalid_argument("the negative rule count is only defined for non-empty strings");
    return static_cast<int>(component_count(reduction_graph(u))) - 1;
}

/// Components of R_γ minus one; γ must be realistic (not checked).
inline int predicted_negative_rule_count(const OverlapGraph& g) {
    return static_cast<int>(component_count(direct_reduction_graph(g).graph)) - 1;
}

namespace detail {

inline std::vector<PointerSet> overlap_components(const OverlapGraph& g) {
    std::vector<PointerSet> out;
    PointerSet seen;
    for (int s : g.domain().members()) {
        if (seen.contains(s)) continue;
        PointerSet comp;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (comp.contains(v)) continue;
            comp.insert(v);
            for (int w : g.neighbours(v).members())
                if (!comp.contains(w)) stack.push_back(w);
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

}  // namespace detail

/// Successfulness of a realistic overlap graph in `allowed`, decided from
/// the sign pattern, the component structure of γ and connectivity of R_γ.
inline bool successful_in_closed_form(const OverlapGraph& g, RuleSet allowed) {
    if (g.empty()) return true;
    const bool all_negative = g.positive().empty();
    const bool discrete = g.edge_count() == 0;
    const auto comps = detail::overlap_components(g);
    auto has_positive = [&](const PointerSet& c) { return !(c & g.positive()).empty(); };
    const bool every_component_positive = std::all_of(comps.begin(), comps.end(), has_positive);
    const bool every_nontrivial_component_positive = std::all_of(
        comps.begin(), comps.end(), [&](const PointerSet& c) { return c.size() == 1 || has_positive(c); });
    auto connected = [&] { return component_count(direct_reduction_graph(g).graph) == 1; };

    const bool nr = allowed.contains(RuleKind::negative);
    const bool pr = allowed.contains(RuleKind::positive);
    const bool dr = allowed.contains(RuleKind::double_);
    if (nr && pr && dr) return true;
    if (nr && pr) return every_nontrivial_component_positive;
    if (nr && dr) return all_negative;
    if (nr) return discrete && all_negative;
    if (pr && dr) return connected();
    if (pr) return every_component_positive && connected();
    if (dr) return all_negative && connected();
    return false;
}

}  // namespace ciliate
