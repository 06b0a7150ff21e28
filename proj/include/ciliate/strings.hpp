#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ciliate/errors.hpp"
#include "ciliate/pointer_set.hpp"

namespace ciliate {

/// A pointer p or its barred form p̄. Magnitudes start at 2.
struct Pointer {
    int magnitude = 2;
    bool barred = false;

    constexpr Pointer bar() const { return {magnitude, !barred}; }
    friend constexpr auto operator<=>(const Pointer&, const Pointer&) = default;
};

using PointerString = std::vector<Pointer>;
using PointerView = std::span<const Pointer>;

// ---------------------------------------------------------------------------
// Text formats
//
// Spaced:  "3 2 -4 3 -2 4"   (any ASCII whitespace between tokens)
// Compact: "32-43-24"        (magnitudes 2..9 only)
// Input containing whitespace is read as spaced, anything else as compact.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

inline Pointer parse_spaced_token(std::string_view tok) {
    bool barred = false;
    if (!tok.empty() && tok.front() == '-') {
        barred = true;
        tok.remove_prefix(1);
    }
    if (tok.empty() || tok.size() > 6)
        throw parse_error("malformed pointer token '" + std::string(tok) + "'");
    int value = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw parse_error("malformed pointer token '" + std::string(tok) + "'");
        value = value * 10 + (c - '0');
    }
    if (value < 2) throw parse_error("pointer magnitude must be at least 2, got " + std::to_string(value));
    if (value > kMaxMagnitude)
        throw parse_error("pointer magnitude " + std::to_string(value) + " exceeds supported maximum " +
                          std::to_string(kMaxMagnitude));
    return {value, barred};
}

}  // namespace detail

inline PointerString parse_pointer_string(std::string_view text) {
    PointerString out;
    const bool spaced = std::any_of(text.begin(), text.end(), detail::is_space);
    if (spaced) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && detail::is_space(text[i])) ++i;
            std::size_t j = i;
            while (j < text.size() && !detail::is_space(text[j])) ++j;
            if (j > i) out.push_back(detail::parse_spaced_token(text.substr(i, j - i)));
            i = j;
        }
        return out;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool barred = false;
        if (text[i] == '-') {
            barred = true;
            if (++i == text.size()) throw parse_error("dangling '-' at end of compact string");
        }
        const char c = text[i];
        if (c < '0' || c > '9') throw parse_error(std::string("unexpected character '") + c + "' in compact string");
        if (c < '2') throw parse_error(std::string("pointer magnitude must be at least 2, got ") + c);
        out.push_back({c - '0', barred});
    }
    return out;
}

inline std::string format_spaced(PointerView u) {
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) out += ' ';
        if (u[i].barred) out += '-';
        out += std::to_string(u[i].magnitude);
    }
    return out;
}

inline std::string format_compact(PointerView u) {
    std::string out;
    for (const Pointer& p : u) {
        if (p.magnitude > 9) throw std::invalid_argument("compact format requires magnitudes <= 9");
        if (p.barred) out += '-';
        out += static_cast<char>('0' + p.magnitude);
    }
    return out;
}

/// Compact when every magnitude fits in one digit, spaced otherwise.
inline std::string format_pointer_string(PointerView u) {
    const bool small = std::all_of(u.begin(), u.end(), [](const Pointer& p) { return p.magnitude <= 9; });
    return small ? format_compact(u) : format_spaced(u);
}

// ---------------------------------------------------------------------------
// String operations
// ---------------------------------------------------------------------------

inline bool is_legal(PointerView u) {
    std::array<unsigned char, kMaxMagnitude + 1> count{};
    for (const Pointer& p : u) {
        if (p.magnitude < 2 || p.magnitude > kMaxMagnitude) return false;
        if (++count[static_cast<std::size_t>(p.magnitude)] > 2) return false;
    }
    return std::all_of(count.begin(), count.end(), [](unsigned char c) { return c == 0 || c == 2; });
}

inline PointerString complement(PointerView u) {
    PointerString out;
    out.reserve(u.size());
    for (const Pointer& p : u) out.push_back(p.bar());
    return out;
}

inline PointerString reversal(PointerView u) { return {u.rbegin(), u.rend()}; }

/// ū = x̄_n ... x̄_1
inline PointerString inverse(PointerView u) {
    PointerString out;
    out.reserve(u.size());
    for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(it->bar());
    return out;
}

/// Distinct rotations w2 w1 of u = w1 w2, in order of rotation offset.
inline std::vector<PointerString> conjugates(PointerView u) {
    std::vector<PointerString> out;
    if (u.empty()) {
        out.emplace_back();
        return out;
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
        PointerString w(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
        w.insert(w.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// LegalString
// ---------------------------------------------------------------------------

/// A pointer sequence in which every magnitude present occurs exactly twice.
///
/// Positions follow the usual convention: position i (0 <= i <= n) is the gap
/// to the right of the i-th letter, so letters are numbered 1..n. The
/// prefix-parity table makes O_u(i,j) a single xor.
class LegalString {
public:
    /// The empty string λ.
    LegalString() : prefix_(1) {}

    explicit LegalString(PointerString seq) : seq_(std::move(seq)) {
        if (!is_legal(seq_)) throw not_legal_error("'" + format_spaced(seq_) + "' is not a legal string");
        int top = 0;
        for (const Pointer& p : seq_) top = std::max(top, p.magnitude);
        occurrences_.assign(static_cast<std::size_t>(top + 1), {0, 0});
        prefix_.reserve(seq_.size() + 1);
        prefix_.emplace_back();
        std::vector<bool> first_barred(static_cast<std::size_t>(top + 1), false);
        for (std::size_t i = 0; i < seq_.size(); ++i) {
            const auto p = seq_[i];
            auto& occ = occurrences_[static_cast<std::size_t>(p.magnitude)];
            if (occ.first == 0) {
                occ.first = i + 1;
                first_barred[static_cast<std::size_t>(p.magnitude)] = p.barred;
                domain_.insert(p.magnitude);
            } else {
                occ.second = i + 1;
                if (first_barred[static_cast<std::size_t>(p.magnitude)] != p.barred) positive_.insert(p.magnitude);
            }
            PointerSet next = prefix_.back();
            next.toggle(p.magnitude);
            prefix_.push_back(next);
        }
    }

    static std::optional<LegalString> try_make(PointerString seq) {
        if (!is_legal(seq)) return std::nullopt;
        return LegalString(std::move(seq));
    }

    static LegalString parse(std::string_view text) { return LegalString(parse_pointer_string(text)); }

    const PointerString& letters() const { return seq_; }
    std::size_t size() const { return seq_.size(); }
    bool empty() const { return seq_.empty(); }
    const Pointer& operator[](std::size_t i) const { return seq_[i]; }

    const PointerSet& domain() const { return domain_; }
    const PointerSet& positive() const { return positive_; }
    PointerSet negative() const { return domain_ ^ positive_; }

    /// |dom(u)| + 1
    int kappa() const { return static_cast<int>(domain_.size()) + 1; }

    /// True when dom(u) = {2, ..., kappa}.
    bool has_contiguous_domain() const { return domain_ == PointerSet::range(2, kappa()); }

    /// 1-based letter indices (i < j) of the two occurrences of magnitude p.
    std::pair<std::size_t, std::size_t> occurrences(int p) const {
        require_in_domain(p);
        return occurrences_[static_cast<std::size_t>(p)];
    }

    /// O_u(p): pointers whose interval interleaves the p-interval.
    PointerSet overlap(int p) const {
        const auto [i, j] = occurrences(p);
        return overlap(i, j - 1);
    }

    /// O_u(i,j) for positions 0 <= i, j <= n; symmetric in i and j.
    PointerSet overlap(std::size_t i, std::size_t j) const {
        if (i > seq_.size() || j > seq_.size())
            throw std::out_of_range("position out of range 0.." + std::to_string(seq_.size()));
        return prefix_[i] ^ prefix_[j];
    }

    friend bool operator==(const LegalString& a, const LegalString& b) { return a.seq_ == b.seq_; }

private:
    void require_in_domain(int p) const {
        if (!domain_.contains(p))
            throw std::invalid_argument("pointer " + std::to_string(p) + " is not in dom(u)");
    }

    PointerString seq_;
    PointerSet domain_;
    PointerSet positive_;
    std::vector<std::pair<std::size_t, std::size_t>> occurrences_;
    std::vector<PointerSet> prefix_;
};

inline const PointerSet& domain(const LegalString& u) { return u.domain(); }
inline const PointerSet& positive_set(const LegalString& u) { return u.positive(); }
inline PointerSet negative_set(const LegalString& u) { return u.negative(); }
inline PointerSet overlap_set(const LegalString& u, int p) { return u.overlap(p); }
inline PointerSet positional_overlap(const LegalString& u, std::size_t i, std::size_t j) { return u.overlap(i, j); }

}  // namespace ciliate
