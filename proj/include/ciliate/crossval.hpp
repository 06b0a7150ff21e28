#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ciliate/arrangement.hpp"
#include "ciliate/compress.hpp"
#include "ciliate/direct.hpp"
#include "ciliate/iso.hpp"
#include "ciliate/overlap.hpp"
#include "ciliate/random.hpp"
#include "ciliate/reduction.hpp"
#include "ciliate/rewriting.hpp"

namespace ciliate {

struct CrossvalSummary {
    std::string theorem;
    int trials = 0;    // instances checked
    int failures = 0;
    int skipped = 0;   // instances above the search cap

    std::string to_string() const {
        std::string out = "theorem=" + theorem + " trials=" + std::to_string(trials) +
                          " failures=" + std::to_string(failures);
        if (skipped > 0) out += " skipped=" + std::to_string(skipped);
        return out;
    }
};

struct CrossvalOptions {
    std::uint64_t seed = 0;
    int trials = 100;
    int max_kappa = 6;
    int string_cap = kDefaultStringSearchCap;
    int graph_cap = kDefaultGraphSearchCap;
};

/// Trial t draws its arrangement from an engine seeded with {seed, t}, so a
/// trial's instance does not depend on how many trials run before it.
inline Rng trial_rng(std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    return Rng(seq);
}

/// Random realistic instances checked against: rootedness, cps(R_u) ≈ R_γ,
/// the snr and gnr counts, and the eight-way successfulness classifier.
inline std::vector<CrossvalSummary> crossval(const CrossvalOptions& opt) {
    if (opt.max_kappa < 2) throw std::invalid_argument("crossval: kappa must be >= 2");
    std::vector<CrossvalSummary> s{{"5.5"}, {"7.4"}, {"8.1"}, {"8.2"}, {"8.6"}};
    auto& rooted = s[0];
    auto& iso = s[1];
    auto& snr = s[2];
    auto& gnr = s[3];
    auto& classify = s[4];

    for (int t = 0; t < opt.trials; ++t) {
        Rng rng = trial_rng(opt.seed, t);
        std::uniform_int_distribution<int> pick(2, opt.max_kappa);
        const int kappa = pick(rng);
        const LegalString u = pi_kappa(random_arrangement(rng, kappa));
        const auto rg = reduction_graph(u);
        const auto gamma = overlap_graph(u);
        const auto direct = direct_reduction_graph(gamma);
        const int predicted = static_cast<int>(component_count(rg)) - 1;

        ++rooted.trials;
        if (find_root_subgraphs(rg).empty()) ++rooted.failures;

        ++iso.trials;
        if (canonical_labelled(cps(rg)) != canonical_labelled(direct.graph)) ++iso.failures;

        if (static_cast<int>(u.domain().size()) > opt.string_cap) {
            ++snr.skipped;
        } else {
            ++snr.trials;
            if (string_negative_counts(u, RuleSet::all(), opt.string_cap) != NegativeCountMask{1} << predicted)
                ++snr.failures;
        }

        if (static_cast<int>(gamma.size()) > opt.graph_cap) {
            ++gnr.skipped;
            ++classify.skipped;
            continue;
        }
        ++gnr.trials;
        const int graph_predicted = static_cast<int>(component_count(direct.graph)) - 1;
        if (graph_negative_counts(gamma, RuleSet::all(), opt.graph_cap) != NegativeCountMask{1} << graph_predicted)
            ++gnr.failures;

        ++classify.trials;
        for (RuleSet S : all_rule_sets())
            if (successful_in(gamma, S, opt.graph_cap) != successful_in_closed_form(gamma, S)) {
                ++classify.failures;
                break;
            }
    }
    return s;
}

}  // namespace ciliate
