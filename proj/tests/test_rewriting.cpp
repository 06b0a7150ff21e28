#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ciliate/arrangement.hpp"
#include "ciliate/random.hpp"
#include "ciliate/rewriting.hpp"

using namespace ciliate;

namespace {

const RuleSet kNrPr = RuleSet::parse("Gnr,Gpr");
const RuleSet kNrDr = RuleSet::parse("Gnr,Gdr");
const RuleSet kPrDr = RuleSet::parse("Gpr,Gdr");

OverlapGraph gamma_of(const char* text) { return overlap_graph(LegalString::parse(text)); }

// Plain DFS with no memo and no pruning.
NegativeCountMask naive_string_counts(const LegalString& u, RuleSet allowed, int negatives = 0) {
    if (u.empty()) return NegativeCountMask{1} << negatives;
    NegativeCountMask out = 0;
    for (const auto& r : applicable_string_rules(u, allowed))
        out |= naive_string_counts(apply_string_rule(u, r), allowed,
                                   negatives + (r.kind == RuleKind::negative ? 1 : 0));
    return out;
}

NegativeCountMask naive_graph_counts(const OverlapGraph& g, RuleSet allowed, int negatives = 0) {
    if (g.empty()) return NegativeCountMask{1} << negatives;
    NegativeCountMask out = 0;
    for (const auto& r : applicable_graph_rules(g, allowed))
        out |= naive_graph_counts(apply_graph_rule(g, r), allowed, negatives + (r.kind == RuleKind::negative ? 1 : 0));
    return out;
}

int negatives_in(const auto& seq) {
    int n = 0;
    for (const auto& r : seq) n += r.kind == RuleKind::negative ? 1 : 0;
    return n;
}

GraphRule as_graph_rule(const StringRule& r) {
    return {r.kind, std::min(r.p, r.q ? r.q : r.p), r.q ? std::max(r.p, r.q) : 0};
}

}  // namespace

TEST(RuleSetParse, NamesAndFormatting) {
    EXPECT_EQ(RuleSet::parse("Gnr,Gpr").bits(), 3u);
    EXPECT_EQ(RuleSet::parse("{Snr, Sdr}").bits(), 5u);
    EXPECT_EQ(RuleSet::parse("nr pr dr"), RuleSet::all());
    EXPECT_EQ(RuleSet::parse("{}"), RuleSet::none());
    EXPECT_EQ(RuleSet::parse(""), RuleSet::none());
    EXPECT_THROW(RuleSet::parse("Gxr"), parse_error);
    EXPECT_EQ(RuleSet(5u).to_string('G'), "{Gnr,Gdr}");
    EXPECT_EQ(RuleSet::none().to_string('S'), "{}");
    EXPECT_EQ(all_rule_sets().size(), 8u);
}

TEST(RuleParse, RoundTrips) {
    const auto seq = parse_graph_rules("gnr_4 gdr_{5,7}  gnr_2\tgdr_{3,6}");
    ASSERT_EQ(seq.size(), 4u);
    EXPECT_EQ(seq[1], (GraphRule{RuleKind::double_, 5, 7}));
    EXPECT_EQ(format_graph_rules(seq), "gnr_4 gdr_{5,7} gnr_2 gdr_{3,6}");
    EXPECT_EQ(GraphRule::parse("gdr_{7,5}"), (GraphRule{RuleKind::double_, 5, 7}));
    EXPECT_EQ(format_string_rules(parse_string_rules("snr_2 spr_10 sdr_{3,4}")), "snr_2 spr_10 sdr_{3,4}");
    EXPECT_THROW(parse_graph_rules("snr_2"), parse_error);
    EXPECT_THROW(parse_graph_rules("gdr_5"), parse_error);
    EXPECT_THROW(parse_graph_rules("gxr_5"), parse_error);
    EXPECT_THROW(parse_string_rules("snr_"), parse_error);
}

TEST(StringRules, Examples) {
    EXPECT_TRUE(apply_string_rule(LegalString::parse("22"), StringRule::parse("snr_2")).empty());
    EXPECT_EQ(format_pointer_string(apply_string_rule(LegalString::parse("23-23"), StringRule::parse("spr_2")).letters()),
              "-33");
    EXPECT_TRUE(apply_string_rule(LegalString::parse("2323"), StringRule::parse("sdr_{2,3}")).empty());
    EXPECT_EQ(format_pointer_string(apply_string_rule(LegalString::parse("4253526364"), StringRule::parse("sdr_{2,3}")).letters()),
              "465564");
}

TEST(StringRules, RejectsInapplicableRules) {
    const auto u = LegalString::parse("2323");
    EXPECT_THROW(apply_string_rule(u, StringRule::parse("snr_2")), std::invalid_argument);
    EXPECT_THROW(apply_string_rule(u, StringRule::parse("spr_2")), std::invalid_argument);
    EXPECT_THROW(apply_string_rule(u, StringRule::parse("sdr_{3,2}")), std::invalid_argument);
    EXPECT_THROW(apply_string_rule(u, StringRule::parse("snr_5")), std::invalid_argument);
    EXPECT_EQ(applicable_string_rules(u).size(), 1u);
    EXPECT_TRUE(applicable_string_rules(u, RuleSet::parse("Snr,Spr")).empty());
}

TEST(StringRules, ShrinkTheDomainAndStayLegal) {
    Rng rng(401);
    for (int t = 0; t < 200; ++t) {
        const auto u = random_legal_string(rng, 1 + t % 7);
        for (const auto& r : applicable_string_rules(u)) {
            const auto v = apply_string_rule(u, r);
            const PointerSet removed = r.kind == RuleKind::double_ ? PointerSet{r.p, r.q} : PointerSet{r.p};
            EXPECT_EQ(v.domain(), u.domain() ^ removed);
        }
    }
}

TEST(GraphRules, Examples) {
    const auto g = gamma_of("22");
    EXPECT_TRUE(apply_graph_rule(g, GraphRule::parse("gnr_2")).empty());
    EXPECT_THROW(apply_graph_rule(g, GraphRule::parse("gpr_2")), std::invalid_argument);
    EXPECT_THROW(apply_graph_rule(gamma_of("2323"), GraphRule::parse("gnr_2")), std::invalid_argument);
    EXPECT_THROW(apply_graph_rule(gamma_of("2323"), GraphRule::parse("gdr_{2,4}")), std::invalid_argument);

    // gpr on a positive centre with two negative neighbours.
    const OverlapGraph star(PointerSet{2, 3, 4}, PointerSet{3}, {{2, 3}, {3, 4}});
    const auto after = apply_graph_rule(star, GraphRule::parse("gpr_3"));
    EXPECT_EQ(after.positive(), (PointerSet{2, 4}));
    EXPECT_EQ(after.edges(), (std::vector<std::pair<int, int>>{{2, 4}}));
}

TEST(GraphRules, MirrorStringRulesOnOverlapGraphs) {
    // Applying a rule to u and then taking the overlap graph matches the
    // graph rule applied to the overlap graph of u.
    Rng rng(409);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        const auto u = t % 2 ? random_legal_string(rng, 1 + t % 7) : pi_kappa(random_arrangement(rng, 2 + t % 7));
        const auto g = overlap_graph(u);
        for (const auto& r : applicable_string_rules(u)) {
            const auto gr = as_graph_rule(r);
            ASSERT_TRUE(graph_rule_applicable(g, gr)) << format_pointer_string(u.letters()) << " " << r.to_string();
            EXPECT_EQ(overlap_graph(apply_string_rule(u, r)), apply_graph_rule(g, gr))
                << format_pointer_string(u.letters()) << " " << r.to_string();
            ++checked;
        }
    }
    EXPECT_GT(checked, 300);
}

TEST(Reductions, TrivialString) {
    const auto seqs = successful_string_reductions(LegalString::parse("22"));
    ASSERT_EQ(seqs.size(), 1u);
    EXPECT_EQ(format_string_rules(seqs[0]), "snr_2");
    EXPECT_EQ(string_negative_counts(LegalString{}), 1u);
}

TEST(Reductions, SortedStringUsesThreeNegativeRules) {
    const auto seqs = successful_string_reductions(LegalString::parse("223344"));
    EXPECT_FALSE(seqs.empty());
    for (const auto& s : seqs) EXPECT_EQ(negatives_in(s), 3);
    EXPECT_EQ(predicted_negative_rule_count(LegalString::parse("223344")), 3);
}

TEST(Reductions, RealisticExampleUsesOneNegativeRule) {
    const auto u = LegalString::parse("72673456-3-245");
    EXPECT_EQ(predicted_negative_rule_count(u), 1);
    EXPECT_EQ(predicted_negative_rule_count(overlap_graph(u)), 1);
    EXPECT_EQ(mask_members(string_negative_counts(u, RuleSet::all(), 7)), std::vector<int>{1});
    EXPECT_EQ(mask_members(graph_negative_counts(overlap_graph(u))), std::vector<int>{1});
}

TEST(Reductions, AllNegativeExampleUsesTwoNegativeRules) {
    const auto u = LegalString::parse("453475623267");
    EXPECT_EQ(predicted_negative_rule_count(u), 2);
    EXPECT_EQ(predicted_negative_rule_count(overlap_graph(u)), 2);
    EXPECT_EQ(mask_members(graph_negative_counts(overlap_graph(u))), std::vector<int>{2});
}

TEST(Reductions, SingleLetterPairCountsBothCycles) {
    EXPECT_EQ(predicted_negative_rule_count(LegalString::parse("22")), 1);
    EXPECT_THROW(predicted_negative_rule_count(LegalString{}), std::invalid_argument);
}

TEST(Reductions, KnownGraphSequencesSucceed) {
    // Sequences are written as compositions, so the rightmost rule applies first.
    auto run = [](const char* u, const char* text) {
        auto rules = parse_graph_rules(text);
        std::reverse(rules.begin(), rules.end());
        auto g = gamma_of(u);
        for (const auto& r : rules) {
            EXPECT_TRUE(graph_rule_applicable(g, r)) << r.to_string();
            if (!graph_rule_applicable(g, r)) return false;
            g = apply_graph_rule(g, r);
        }
        return g.empty();
    };
    EXPECT_TRUE(run("453475623267", "gnr_4 gdr_{5,7} gnr_2 gdr_{3,6}"));
    EXPECT_TRUE(run("72673456-3-245", "gnr_2 gpr_4 gpr_5 gpr_7 gpr_6 gpr_3"));
    EXPECT_THROW(apply_graph_rules(gamma_of("72673456-3-245"), parse_graph_rules("gnr_2 gpr_3")),
                 std::invalid_argument);
}

TEST(Reductions, CapsAreEnforced) {
    const auto u = LegalString::parse("453475623267");
    EXPECT_THROW(string_negative_counts(u, RuleSet::all(), 5), cap_exceeded_error);
    EXPECT_THROW(successful_in(overlap_graph(u), RuleSet::all(), 5), cap_exceeded_error);
    EXPECT_THROW(successful_string_reductions(LegalString::parse("22334455667788"), RuleSet::all()),
                 cap_exceeded_error);
}

TEST(Reductions, EnumeratedSequencesAreSuccessful) {
    Rng rng(419);
    for (int t = 0; t < 40; ++t) {
        const auto u = random_legal_string(rng, 1 + t % 4);
        for (const auto& s : successful_string_reductions(u)) EXPECT_TRUE(apply_string_rules(u, s).empty());
        const auto g = overlap_graph(u);
        for_each_successful_graph_reduction(g, RuleSet::all(), [&](const std::vector<GraphRule>& s) {
            EXPECT_TRUE(apply_graph_rules(g, s).empty());
            return true;
        });
    }
}

TEST(Reductions, MemoisedSearchMatchesNaiveSearch) {
    Rng rng(421);
    for (int t = 0; t < 60; ++t) {
        const auto u = random_legal_string(rng, 1 + t % 5);
        const auto g = overlap_graph(u);
        for (const RuleSet s : all_rule_sets()) {
            EXPECT_EQ(string_negative_counts(u, s), naive_string_counts(u, s)) << format_pointer_string(u.letters());
            EXPECT_EQ(graph_negative_counts(g, s), naive_graph_counts(g, s)) << format_pointer_string(u.letters());
        }
    }
}

TEST(Reductions, StringNegativeCountMatchesComponents) {
    Rng rng(431);
    for (int t = 0; t < 120; ++t) {
        const auto u = t % 2 ? random_legal_string(rng, 1 + t % 5) : pi_kappa(random_arrangement(rng, 2 + t % 5));
        const auto mask = string_negative_counts(u);
        ASSERT_NE(mask, 0u);
        EXPECT_EQ(mask_members(mask), std::vector<int>{predicted_negative_rule_count(u)})
            << format_pointer_string(u.letters());
    }
}

TEST(Reductions, GraphNegativeCountMatchesComponentsForRealisticGraphs) {
    Rng rng(433);
    for (int t = 0; t < 120; ++t) {
        const auto g = overlap_graph(pi_kappa(random_arrangement(rng, 2 + t % 6)));
        EXPECT_EQ(mask_members(graph_negative_counts(g)), std::vector<int>{predicted_negative_rule_count(g)});
    }
}

TEST(Classifier, KnownExamples) {
    const auto g72 = gamma_of("453475623267");
    EXPECT_TRUE(successful_in(g72, kNrDr));
    EXPECT_FALSE(successful_in(g72, kPrDr));
    EXPECT_TRUE(successful_in_closed_form(g72, kNrDr));
    EXPECT_FALSE(successful_in_closed_form(g72, kPrDr));

    const auto g73 = gamma_of("72673456-3-245");
    EXPECT_FALSE(successful_in(g73, kPrDr));
    EXPECT_TRUE(successful_in(g73, kNrPr));
    EXPECT_FALSE(successful_in(g73, kNrDr));
    EXPECT_TRUE(successful_in(g73, RuleSet::all()));
    EXPECT_FALSE(successful_in(g73, RuleSet::none()));
    EXPECT_TRUE(successful_in(OverlapGraph{}, RuleSet::none()));
}

TEST(Classifier, ClosedFormMatchesSearchExhaustivelyUpToKappaFour) {
    for (int kappa = 2; kappa <= 4; ++kappa)
        for_each_arrangement(kappa, [&](const MicronuclearArrangement& d) {
            const auto g = overlap_graph(pi_kappa(d));
            for (const RuleSet s : all_rule_sets())
                EXPECT_EQ(successful_in(g, s), successful_in_closed_form(g, s))
                    << format_arrangement(d) << " " << s.to_string('G');
            return !::testing::Test::HasFailure();
        });
}

TEST(Classifier, ClosedFormMatchesSearchOnRandomRealisticGraphs) {
    Rng rng(439);
    for (int t = 0; t < 60; ++t) {
        const auto g = overlap_graph(pi_kappa(random_arrangement(rng, 5 + t % 3)));
        for (const RuleSet s : all_rule_sets()) EXPECT_EQ(successful_in(g, s), successful_in_closed_form(g, s));
    }
}
