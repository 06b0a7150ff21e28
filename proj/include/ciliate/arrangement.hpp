#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ciliate/errors.hpp"
#include "ciliate/strings.hpp"

namespace ciliate {

/// One MDS symbol M_k or its inversion M̄_k.
struct Segment {
    int index = 1;
    bool inverted = false;

    friend constexpr auto operator<=>(const Segment&, const Segment&) = default;
};

/// A sequence over {M_i, M̄_i} containing each index 1..kappa exactly once.
class MicronuclearArrangement {
public:
    explicit MicronuclearArrangement(std::vector<Segment> entries) : entries_(std::move(entries)) {
        kappa_ = static_cast<int>(entries_.size());
        if (kappa_ < 2) throw std::invalid_argument("a micronuclear arrangement needs kappa >= 2");
        if (kappa_ > kMaxMagnitude) throw std::invalid_argument("kappa exceeds supported maximum");
        std::vector<bool> seen(static_cast<std::size_t>(kappa_) + 1, false);
        for (const Segment& s : entries_) {
            if (s.index < 1 || s.index > kappa_)
                throw std::invalid_argument("segment index M" + std::to_string(s.index) + " outside 1.." +
                                            std::to_string(kappa_));
            if (seen[static_cast<std::size_t>(s.index)])
                throw std::invalid_argument("segment M" + std::to_string(s.index) + " occurs twice");
            seen[static_cast<std::size_t>(s.index)] = true;
        }
    }

    int kappa() const { return kappa_; }
    const std::vector<Segment>& entries() const { return entries_; }

    friend bool operator==(const MicronuclearArrangement&, const MicronuclearArrangement&) = default;

private:
    int kappa_ = 0;
    std::vector<Segment> entries_;
};

/// Parses "M7 M1 M6 M3 M5 -M2 M4".
inline MicronuclearArrangement parse_arrangement(std::string_view text) {
    std::vector<Segment> entries;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view tok = text.substr(i, j - i);
        i = j;

        Segment seg;
        if (tok.front() == '-') {
            seg.inverted = true;
            tok.remove_prefix(1);
        }
        if (tok.size() < 2 || tok.front() != 'M' || tok.size() > 5)
            throw parse_error("malformed arrangement token '" + std::string(tok) + "'");
        int value = 0;
        for (char c : tok.substr(1)) {
            if (c < '0' || c > '9') throw parse_error("malformed arrangement token '" + std::string(tok) + "'");
            value = value * 10 + (c - '0');
        }
        seg.index = value;
        entries.push_back(seg);
    }
    try {
        return MicronuclearArrangement(std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

inline std::string format_arrangement(const MicronuclearArrangement& delta) {
    std::string out;
    for (const Segment& s : delta.entries()) {
        if (!out.empty()) out += ' ';
        if (s.inverted) out += '-';
        out += 'M' + std::to_string(s.index);
    }
    return out;
}

/// The pointer block π_κ(M_k): "2" for k = 1, "κ" for k = κ, "k(k+1)" otherwise.
inline PointerString segment_block(int kappa, Segment s) {
    PointerString block;
    if (s.index == 1)
        block = {{2, false}};
    else if (s.index == kappa)
        block = {{kappa, false}};
    else
        block = {{s.index, false}, {s.index + 1, false}};
    return s.inverted ? inverse(block) : block;
}

inline LegalString pi_kappa(const MicronuclearArrangement& delta) {
    PointerString u;
    u.reserve(2 * static_cast<std::size_t>(delta.kappa()) - 2);
    for (const Segment& s : delta.entries()) {
        const auto block = segment_block(delta.kappa(), s);
        u.insert(u.end(), block.begin(), block.end());
    }
    return LegalString(std::move(u));
}

namespace detail {

inline bool decode_from(PointerView u, std::size_t at, int kappa, std::vector<bool>& used,
                        std::vector<Segment>& acc) {
    if (at == u.size()) return acc.size() == static_cast<std::size_t>(kappa);
    for (int k = 1; k <= kappa; ++k) {
        if (used[static_cast<std::size_t>(k)]) continue;
        for (bool inverted : {false, true}) {
            const auto block = segment_block(kappa, {k, inverted});
            if (at + block.size() > u.size()) continue;
            if (!std::equal(block.begin(), block.end(), u.begin() + static_cast<std::ptrdiff_t>(at))) continue;
            used[static_cast<std::size_t>(k)] = true;
            acc.push_back({k, inverted});
            if (decode_from(u, at + block.size(), kappa, used, acc)) return true;
            acc.pop_back();
            used[static_cast<std::size_t>(k)] = false;
        }
    }
    return false;
}

}  // namespace detail

/// Some δ with π_κ(δ) = u, if one exists. Left-to-right backtracking that
/// tries blocks by increasing index, plain before inverted, so the first
/// arrangement in that order is returned.
inline std::optional<MicronuclearArrangement> realistic_decode(PointerView u) {
    if (u.empty() || !is_legal(u)) return std::nullopt;
    const LegalString legal(PointerString(u.begin(), u.end()));
    if (!legal.has_contiguous_domain()) return std::nullopt;
    const int kappa = legal.kappa();
    std::vector<bool> used(static_cast<std::size_t>(kappa) + 1, false);
    std::vector<Segment> acc;
    if (!detail::decode_from(u, 0, kappa, used, acc)) return std::nullopt;
    return MicronuclearArrangement(std::move(acc));
}

inline std::optional<MicronuclearArrangement> realistic_decode(const LegalString& u) {
    return realistic_decode(PointerView(u.letters()));
}

/// Visits all κ!·2^κ arrangements: permutations in lexicographic order,
/// and for each permutation the inversion masks 0..2^κ-1 (bit t inverts
/// the t-th entry). The visitor returns false to stop early.
template <typename Visitor>
void for_each_arrangement(int kappa, Visitor&& visit) {
    if (kappa < 2 || kappa > 20) throw std::invalid_argument("for_each_arrangement: kappa must be in 2..20");
    std::vector<int> perm(static_cast<std::size_t>(kappa));
    std::iota(perm.begin(), perm.end(), 1);
    const std::uint32_t masks = 1u << kappa;
    do {
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            std::vector<Segment> entries;
            entries.reserve(perm.size());
            for (std::size_t t = 0; t < perm.size(); ++t) entries.push_back({perm[t], ((mask >> t) & 1u) != 0});
            if (!visit(MicronuclearArrangement(std::move(entries)))) return;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace ciliate
