#pragma once

#include <bitset>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ciliate {

/// Largest pointer magnitude the fixed-width sets can hold.
inline constexpr int kMaxMagnitude = 255;

/// A set of pointer magnitudes with symmetric difference as the main
/// operation. Backed by a fixed-width bitset, so every set operation is a
/// handful of word operations regardless of size.
class PointerSet {
public:
    PointerSet() = default;
    PointerSet(std::initializer_list<int> members) {
        for (int p : members) insert(p);
    }

    /// {lo, lo+1, ..., hi}; empty when lo > hi.
    static PointerSet range(int lo, int hi) {
        PointerSet s;
        for (int p = lo; p <= hi; ++p) s.insert(p);
        return s;
    }

    void insert(int p) { bits_.set(checked(p)); }
    void erase(int p) { bits_.reset(checked(p)); }
    void toggle(int p) { bits_.flip(checked(p)); }
    bool contains(int p) const { return p >= 0 && p <= kMaxMagnitude && bits_.test(static_cast<std::size_t>(p)); }

    bool empty() const { return bits_.none(); }
    std::size_t size() const { return bits_.count(); }

    int min() const {
        for (int p = 0; p <= kMaxMagnitude; ++p)
            if (bits_.test(static_cast<std::size_t>(p))) return p;
        return -1;
    }
    int max() const {
        for (int p = kMaxMagnitude; p >= 0; --p)
            if (bits_.test(static_cast<std::size_t>(p))) return p;
        return -1;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int p = 0; p <= kMaxMagnitude; ++p)
            if (bits_.test(static_cast<std::size_t>(p))) out.push_back(p);
        return out;
    }

    PointerSet& operator^=(const PointerSet& o) { bits_ ^= o.bits_; return *this; }
    PointerSet& operator&=(const PointerSet& o) { bits_ &= o.bits_; return *this; }
    PointerSet& operator|=(const PointerSet& o) { bits_ |= o.bits_; return *this; }

    friend PointerSet operator^(PointerSet a, const PointerSet& b) { return a ^= b; }
    friend PointerSet operator&(PointerSet a, const PointerSet& b) { return a &= b; }
    friend PointerSet operator|(PointerSet a, const PointerSet& b) { return a |= b; }
    friend bool operator==(const PointerSet&, const PointerSet&) = default;

    bool is_subset_of(const PointerSet& o) const { return (bits_ & ~o.bits_).none(); }

    /// "{2,3,4}"; "{}" for the empty set.
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int p : members()) {
            if (!first) out += ',';
            out += std::to_string(p);
            first = false;
        }
        return out + "}";
    }

private:
    static std::size_t checked(int p) {
        if (p < 0 || p > kMaxMagnitude)
            throw std::out_of_range("pointer magnitude " + std::to_string(p) + " outside 0.." +
                                    std::to_string(kMaxMagnitude));
        return static_cast<std::size_t>(p);
    }

    std::bitset<kMaxMagnitude + 1> bits_;
};

}  // namespace ciliate
