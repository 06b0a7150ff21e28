#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "ciliate/arrangement.hpp"
#include "ciliate/strings.hpp"

namespace ciliate {

using Rng = std::mt19937_64;

/// Uniform over all κ!·2^κ arrangements.
inline MicronuclearArrangement random_arrangement(Rng& rng, int kappa) {
    if (kappa < 2) throw std::invalid_argument("random_arrangement: kappa must be >= 2");
    std::vector<int> perm(static_cast<std::size_t>(kappa));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(0.5);
    std::vector<Segment> entries;
    for (int k : perm) entries.push_back({k, coin(rng)});
    return MicronuclearArrangement(std::move(entries));
}

/// Legal string with dom = {2..dom_size+1}: both occurrences of every
/// magnitude placed uniformly, each barred independently with probability 1/2.
inline LegalString random_legal_string(Rng& rng, int dom_size) {
    if (dom_size < 0 || dom_size + 1 > kMaxMagnitude)
        throw std::invalid_argument("random_legal_string: domain size out of range");
    PointerString u;
    std::bernoulli_distribution coin(0.5);
    for (int p = 2; p <= dom_size + 1; ++p)
        for (int k = 0; k < 2; ++k) u.push_back({p, coin(rng)});
    std::shuffle(u.begin(), u.end(), rng);
    return LegalString(std::move(u));
}

}  // namespace ciliate
