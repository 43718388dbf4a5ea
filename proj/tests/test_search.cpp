#include <gtest/gtest.h>

#include <distgirth/io.hpp>
#include <distgirth/search.hpp>

#include "oracles.hpp"

using namespace distgirth;

TEST(Certify, EdgelessG4RejectedForLargeIndependentSet) {
    const auto g = build_base_graph(1);
    const auto c = certify(g, EdgeSubset(g.graph()), 3, 2);
    ASSERT_FALSE(c.accepted());
    EXPECT_EQ(c.rejection->reason, RejectionReason::IndependentSetTooLarge);
    EXPECT_EQ(c.rejection->witness.size(), 6u);
}

TEST(Certify, FullG4AcceptedAtK2) {
    const auto g = build_base_graph(1);
    const auto c = certify(g, EdgeSubset::full(g.graph()), 2, 2);
    ASSERT_TRUE(c.accepted());
    EXPECT_EQ(c.certificate->girth, ExtendedCount(3));
    EXPECT_EQ(c.certificate->alpha, 2u);
    EXPECT_EQ(c.certificate->chi_lower, 3u);
    EXPECT_NEAR(c.certificate->empirical_rate, std::pow(3.0, 0.25), 1e-12);
    EXPECT_EQ(reverify_certificate(g, *c.certificate), "");
}

TEST(Certify, FullG4RejectedAtK3WithTriangle) {
    const auto g = build_base_graph(1);
    const auto c = certify(g, EdgeSubset::full(g.graph()), 3, 2);
    ASSERT_FALSE(c.accepted());
    EXPECT_EQ(c.rejection->reason, RejectionReason::ShortCycle);
    EXPECT_EQ(c.rejection->witness.size(), 3u);
    EXPECT_TRUE(is_cycle(g.graph(), c.rejection->witness));
}

TEST(Certify, UnresolvedAlphaIsRejected) {
    const auto g = build_base_graph(2);
    const auto c = certify(g, EdgeSubset::full(g.graph()), 2, std::nullopt, SolveBudget{1, 0});
    ASSERT_FALSE(c.accepted());
    EXPECT_EQ(c.rejection->reason, RejectionReason::AlphaUnresolved);
}

TEST(Certify, ForeignSubsetRejected) {
    const auto g = build_base_graph(1);
    const Graph other = g.graph();
    EXPECT_THROW(certify(g, EdgeSubset(other), 3), InvalidArgument);
}

TEST(Reverify, DetectsTampering) {
    const auto g = build_base_graph(1);
    auto c = *certify(g, EdgeSubset::full(g.graph()), 2, 2).certificate;
    auto bad = c;
    bad.chi_lower = 4;
    EXPECT_NE(reverify_certificate(g, bad), "");
    bad = c;
    bad.alpha = 1;
    EXPECT_NE(reverify_certificate(g, bad), "");
    bad = c;
    bad.mask.reset(0);
    EXPECT_NE(reverify_certificate(g, bad), "");
}

TEST(Deletion, G4FullBecomesTriangleFree) {
    const auto g = build_base_graph(1);
    const auto r = deletion_method(g, ModelParams::with_p(1.0, 1, 1), 3);
    ASSERT_TRUE(r.certification.accepted());
    EXPECT_TRUE(ExtendedCount(3) < r.certification.certificate->girth);
    EXPECT_GT(r.deletions, 0u);
    EXPECT_EQ(oracle::girth(oracle::from_graph(r.subgraph.to_graph())) == 0 ||
                  oracle::girth(oracle::from_graph(r.subgraph.to_graph())) > 3,
              true);
}

TEST(Deletion, EmptySampleUnchanged) {
    const auto g = build_base_graph(1);
    const auto r = deletion_method(g, ModelParams::with_p(0.0, 1, 1), 3);
    EXPECT_EQ(r.subgraph.size(), 0u);
    EXPECT_EQ(r.deletions, 0u);
    ASSERT_TRUE(r.certification.accepted());
    EXPECT_TRUE(r.certification.certificate->girth.is_infinite());
}

TEST(Deletion, DeterministicForSeed) {
    const auto g = build_base_graph(1);
    const auto m = ModelParams::with_p(0.6, 1, 17);
    const auto a = deletion_method(g, m, 4);
    const auto b = deletion_method(g, m, 4);
    EXPECT_TRUE(a.subgraph == b.subgraph);
    EXPECT_EQ(io::certificate_to_json(*a.certification.certificate).dump(),
              io::certificate_to_json(*b.certification.certificate).dump());
}

TEST(Deletion, GirthGuaranteeAcrossSeeds) {
    const auto g4 = build_base_graph(1);
    const auto g8 = build_base_graph(2);
    for (int k = 3; k <= 6; ++k)
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto r4 = deletion_method(g4, ModelParams::with_p(0.7, 1, seed), k);
            ASSERT_TRUE(ExtendedCount(static_cast<std::uint64_t>(k)) < girth(r4.subgraph).value);
            const auto r8 = deletion_method(g8, ModelParams::with_p(0.3, 2, seed), k, std::nullopt, SolveBudget{1, 0});
            ASSERT_TRUE(ExtendedCount(static_cast<std::uint64_t>(k)) < girth(r8.subgraph).value);
        }
}

TEST(Deletion, GirthGuaranteeOnG12) {
    const auto g = build_base_graph(3);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto r = deletion_method(g, ModelParams::with_p(0.002, 3, seed), 4, std::nullopt, SolveBudget{1, 0});
        ASSERT_TRUE(ExtendedCount(4) < girth(r.subgraph).value);
    }
}

TEST(MoserTardos, G4TriangleFree) {
    const auto g = build_base_graph(1);
    const auto r = moser_tardos_search(g, ModelParams::with_p(0.3, 1, 7), 3, 6);
    ASSERT_TRUE(r.success) << r.failure;
    EXPECT_TRUE(ExtendedCount(3) < r.certificate->girth);
    EXPECT_EQ(reverify_certificate(g, *r.certificate), "");
}

TEST(MoserTardos, ZeroProbabilityNeedsNoResamples) {
    const auto g = build_base_graph(1);
    const auto r = moser_tardos_search(g, ModelParams::with_p(0.0, 1, 1), 3, 7);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(r.resamples, 0u);
    EXPECT_TRUE(r.certificate->girth.is_infinite());
}

TEST(MoserTardos, G8GirthFive) {
    const auto g = build_base_graph(2);
    MoserTardosOptions opts;
    // subset events off; l = N so the post hoc alpha always fits
    const auto r = moser_tardos_search(g, ModelParams::with_p(0.05, 2, 3), 4, 70, opts);
    ASSERT_TRUE(r.success) << r.failure;
    EXPECT_TRUE(ExtendedCount(4) < r.certificate->girth);
    EXPECT_TRUE(r.certificate->alpha_exact);
    EXPECT_EQ(reverify_certificate(g, *r.certificate), "");
}

TEST(MoserTardos, TerminatesQuicklyOnG4) {
    const auto g = build_base_graph(1);
    int quick = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = moser_tardos_search(g, ModelParams::with_p(0.3, 1, seed), 3, std::nullopt);
        ASSERT_TRUE(r.success);
        quick += r.resamples <= 10 * r.event_count;
        ASSERT_EQ(r.violated_trace.size(), r.resamples);
    }
    EXPECT_GE(quick, 95);
}

TEST(MoserTardos, BudgetExhaustionIsAReport) {
    const auto g = build_base_graph(1);
    MoserTardosOptions opts;
    opts.max_resamples = 0;
    const auto r = moser_tardos_search(g, ModelParams::with_p(1.0, 1, 1), 3, std::nullopt, opts);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.final_violated, 8u);
    EXPECT_FALSE(r.failure.empty());
}

TEST(MoserTardos, SubsetEvents) {
    const auto g = build_base_graph(1);
    MoserTardosOptions opts;
    opts.subset_events = true;
    const auto bad = moser_tardos_search(g, ModelParams::with_p(0.3, 1, 1), 3, 2, opts);
    EXPECT_FALSE(bad.success);
    const auto ok = moser_tardos_search(g, ModelParams::with_p(0.5, 1, 1), 3, 4, opts);
    ASSERT_TRUE(ok.success) << ok.failure;
    EXPECT_LE(ok.certificate->alpha, 4u);
}

TEST(Restarts, FirstSuccessInSeedOrder) {
    const auto g = build_base_graph(1);
    const auto m = ModelParams::with_p(1.0, 1, 10);
    auto attempt = [&](const ModelParams& p) {
        SearchReport r;
        r.seed = p.seed();
        r.success = p.seed() >= 12;
        return r;
    };
    EXPECT_EQ(run_restarts(m, 5, 1, attempt).seed, 12u);
    EXPECT_EQ(run_restarts(m, 5, 4, attempt).seed, 12u);
    EXPECT_FALSE(run_restarts(m, 2, 2, attempt).success);
}
