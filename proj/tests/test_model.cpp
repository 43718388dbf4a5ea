#include <gtest/gtest.h>

#include <cmath>

#include <distgirth/model.hpp>

using namespace distgirth;

TEST(ModelParams, DerivesP) {
    const auto m = ModelParams::with_gamma(0.7, 1, 42);
    EXPECT_NEAR(m.p(), std::pow(0.7, 4), 1e-15);
    EXPECT_FALSE(m.has_p_override());
    const auto o = ModelParams::with_p(0.3, 2, 1);
    EXPECT_DOUBLE_EQ(o.p(), 0.3);
    EXPECT_NEAR(o.gamma(), std::pow(0.3, 1.0 / 8), 1e-15);
    EXPECT_THROW(ModelParams::with_gamma(1.0, 1, 0), InvalidArgument);
    EXPECT_THROW(ModelParams::with_gamma(0.0, 1, 0), InvalidArgument);
    EXPECT_THROW(ModelParams::with_p(1.5, 1, 0), InvalidArgument);
    EXPECT_THROW(ModelParams::with_gamma(0.5, 0, 0), InvalidArgument);
}

TEST(Sampling, ExtremesAndDeterminism) {
    const auto g = build_base_graph(1);
    EXPECT_EQ(sample_subgraph(g.graph(), ModelParams::with_p(0.0, 1, 5)).size(), 0u);
    EXPECT_EQ(sample_subgraph(g.graph(), ModelParams::with_p(1.0, 1, 5)).size(), 12u);
    const auto m = ModelParams::with_gamma(0.7, 1, 42);
    EXPECT_TRUE(sample_subgraph(g.graph(), m) == sample_subgraph(g.graph(), m));
}

TEST(Sampling, StreamContract) {
    // edge e present iff (x_e >> 11) 2^-53 < p, x_e the e-th output of mt19937_64(seed)
    const auto g = build_base_graph(2);
    const auto sub = sample_subgraph(g.graph(), ModelParams::with_p(0.37, 2, 123));
    std::mt19937_64 ref(123);
    for (std::size_t e = 0; e < g.graph().edge_count(); ++e) {
        const double u = static_cast<double>(ref() >> 11) / 9007199254740992.0;
        ASSERT_EQ(sub.contains(e), u < 0.37);
    }
}

TEST(Sampling, PerEdgeFrequency) {
    const auto g = build_base_graph(1);
    const double p = 0.3;
    const int runs = 10000;
    std::vector<int> hits(12, 0);
    for (int s = 0; s < runs; ++s) {
        const auto sub = sample_subgraph(g.graph(), ModelParams::with_p(p, 1, static_cast<std::uint64_t>(s)));
        for (std::size_t e = 0; e < 12; ++e) hits[e] += sub.contains(e);
    }
    for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / runs, p, 0.02);
}

TEST(LogProbability, Examples) {
    const auto g = build_base_graph(1);
    EXPECT_NEAR(log_probability(EdgeSubset(g.graph()), 0.5), -8.317766166719343, 1e-12);
    EXPECT_NEAR(log_probability(EdgeSubset::full(g.graph()), 0.5), -8.317766166719343, 1e-12);
    EXPECT_THROW(log_probability(EdgeSubset(g.graph()), 0.0), InvalidArgument);
    EXPECT_THROW(log_probability(EdgeSubset(g.graph()), 1.0), InvalidArgument);
}

TEST(LogProbability, ExhaustiveMeasureIsOne) {
    const auto g = build_base_graph(1);
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
        double total = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
            EdgeSubset sub(g.graph());
            for (std::size_t e = 0; e < 12; ++e)
                if ((mask >> e) & 1u) sub.insert(e);
            total += std::exp(log_probability(sub, p));
        }
        EXPECT_NEAR(total, 1.0, 1e-9) << "p = " << p;
    }
}

TEST(Events, IndependentSetEnumeration) {
    const auto g = build_base_graph(1);
    const auto three = enumerate_independent_set_events(g.graph(), 3, 0.2);
    ASSERT_EQ(three.size(), 20u);
    for (const auto& ev : three) {
        EXPECT_GE(ev.variable_set.size(), 1u);
        EXPECT_LE(ev.variable_set.size(), 3u);
        EXPECT_NEAR(ev.probability, std::pow(0.8, static_cast<double>(ev.variable_set.size())), 1e-15);
        EXPECT_FALSE(ev.unavoidable());
    }
    const auto two = enumerate_independent_set_events(g.graph(), 2, 0.2);
    ASSERT_EQ(two.size(), 15u);
    EXPECT_EQ(std::count_if(two.begin(), two.end(), [](const BadEvent& e) { return e.unavoidable(); }), 3);
    const auto six = enumerate_independent_set_events(g.graph(), 6, 0.2);
    ASSERT_EQ(six.size(), 1u);
    EXPECT_EQ(six[0].variable_set.size(), 12u);
    EXPECT_THROW(enumerate_independent_set_events(g.graph(), 7, 0.2), InvalidArgument);
    EXPECT_THROW(enumerate_independent_set_events(g.graph(), 3, 0.2, EnumerationGuard{10}), ResourceError);
}

TEST(Events, CycleEnumeration) {
    const auto g = build_base_graph(1);
    const auto tri = enumerate_cycle_events(g.graph(), 3, 0.3);
    ASSERT_EQ(tri.size(), 8u);
    for (const auto& ev : tri) EXPECT_NEAR(ev.probability, 0.027, 1e-15);
    EXPECT_TRUE(enumerate_cycle_events(path_graph(6), 5, 0.3).empty());
    const auto sq = enumerate_cycle_events(cycle_graph(4), 4, 0.5);
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_NEAR(sq[0].probability, 0.0625, 1e-15);
    EXPECT_THROW(enumerate_cycle_events(g.graph(), 2, 0.3), InvalidArgument);
}

TEST(Dependencies, Examples) {
    // two disjoint triangles
    const Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto ev = enumerate_cycle_events(two, 3, 0.5);
    ASSERT_EQ(ev.size(), 2u);
    const auto d = dependency_graph(ev);
    EXPECT_TRUE(d.neighbors(0).empty());
    EXPECT_TRUE(d.neighbors(1).empty());

    const auto g = build_base_graph(1);
    const auto sys = build_event_system(g.graph(), 1, 0.1, 3, 3);
    ASSERT_EQ(sys.events.size(), 28u);
    for (std::size_t i = 0; i < sys.events.size(); ++i)
        for (std::size_t j = 0; j < sys.events.size(); ++j) {
            if (i == j) continue;
            bool shared = false;
            for (auto e : sys.events[i].variable_set)
                shared |= std::count(sys.events[j].variable_set.begin(), sys.events[j].variable_set.end(), e) > 0;
            const auto& nb = sys.dependencies.neighbors(i);
            ASSERT_EQ(std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(j)), shared);
        }
    // a triangle and a 3-subset equal to its vertex set are dependent
    for (std::size_t c = 20; c < 28; ++c) {
        auto verts = sys.events[c].vertices;
        std::sort(verts.begin(), verts.end());
        bool found = false;
        for (std::size_t s = 0; s < 20; ++s)
            if (sys.events[s].vertices == verts) {
                const auto& nb = sys.dependencies.neighbors(c);
                EXPECT_TRUE(std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(s)));
                found = true;
            }
        EXPECT_TRUE(found);
    }
}

TEST(Events, WarningForSmallL) {
    const auto g = build_base_graph(1);
    const auto sys = build_event_system(g.graph(), 1, 0.1, 3, 2);
    EXPECT_EQ(sys.unavoidable_count(), 3u);
    EXPECT_EQ(sys.warnings.size(), 1u);
    EXPECT_TRUE(build_event_system(g.graph(), 1, 0.1, 3, 3).warnings.empty());
}

TEST(Events, EmpiricalFrequencyMatchesProbability) {
    const auto g = build_base_graph(1);
    const double p = 0.4;
    const auto sys = build_event_system(g.graph(), 1, p, 3, 3);
    const int runs = 10000;
    std::vector<int> hits(sys.events.size(), 0);
    for (int s = 0; s < runs; ++s) {
        const auto sub = sample_subgraph(g.graph(), ModelParams::with_p(p, 1, 1000 + static_cast<std::uint64_t>(s)));
        for (std::size_t i = 0; i < sys.events.size(); ++i) hits[i] += sys.events[i].occurs(sub.mask());
    }
    for (std::size_t i = 0; i < sys.events.size(); ++i) {
        const double q = sys.events[i].probability;
        const double sigma = std::sqrt(q * (1 - q) / runs);
        EXPECT_NEAR(static_cast<double>(hits[i]) / runs, q, 4 * sigma) << "event " << i;
    }
}

TEST(Events, DisjointTrianglesAreIndependent) {
    const auto g = build_base_graph(2);
    const double p = 0.5;
    const auto tri = enumerate_cycle_events(g.graph(), 3, p);
    std::size_t a = 0, b = 1;
    while (std::find_first_of(tri[a].vertices.begin(), tri[a].vertices.end(), tri[b].vertices.begin(),
                              tri[b].vertices.end()) != tri[a].vertices.end())
        ++b;
    const int runs = 10000;
    int both = 0;
    for (int s = 0; s < runs; ++s) {
        const auto sub = sample_subgraph(g.graph(), ModelParams::with_p(p, 2, static_cast<std::uint64_t>(s)));
        both += tri[a].occurs(sub.mask()) && tri[b].occurs(sub.mask());
    }
    const double q = tri[a].probability * tri[b].probability;
    EXPECT_NEAR(static_cast<double>(both) / runs, q, 4 * std::sqrt(q * (1 - q) / runs));
}
