#include <gtest/gtest.h>

#include <random>

#include <distgirth/graph.hpp>
#include <distgirth/solvers.hpp>

#include "oracles.hpp"

using namespace distgirth;

namespace {

std::vector<VertexId> ids(const BaseGraph& g, std::initializer_list<const char*> bits) {
    std::vector<VertexId> out;
    for (const char* b : bits) out.push_back(*g.find(BitVertex::from_string(b)));
    return out;
}

Graph edgeless(std::size_t n) { return Graph(n, {}); }

} // namespace

TEST(Girth, G4IsThree) {
    const auto g = build_base_graph(1);
    const auto r = girth(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(3));
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.witness_kind, WitnessKind::Cycle);
    EXPECT_TRUE(verify_witness(g.graph(), r));
}

TEST(Girth, G8IsThreeWithValidTriangle) {
    const auto g = build_base_graph(2);
    const auto r = girth(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(3));
    ASSERT_EQ(r.witness.size(), 3u);
    EXPECT_TRUE(is_cycle(g.graph(), r.witness));
    // the listed triangle is one of them
    EXPECT_TRUE(is_cycle(g.graph(), ids(g, {"11110000", "11001100", "11000011"})));
}

TEST(Girth, ForestsAreInfinite) {
    EXPECT_TRUE(girth(path_graph(7)).value.is_infinite());
    EXPECT_TRUE(girth(edgeless(4)).value.is_infinite());
    EXPECT_TRUE(girth(Graph(0, {})).value.is_infinite());
    EXPECT_EQ(girth(cycle_graph(9)).value, ExtendedCount(9));
}

TEST(Girth, ExtendedCountOrdering) {
    EXPECT_TRUE(ExtendedCount(5) < ExtendedCount::infinite());
    EXPECT_FALSE(ExtendedCount::infinite() < ExtendedCount(5));
    EXPECT_THROW(ExtendedCount::infinite().value(), InvalidArgument);
}

TEST(CountCycles, Examples) {
    const auto g = build_base_graph(1);
    const auto c = count_cycles(g.graph(), 3);
    EXPECT_EQ(c.labeled, 48u);
    EXPECT_EQ(c.distinct, 8u);
    EXPECT_EQ(count_cycles(path_graph(6), 3).labeled, 0u);
    const auto square = count_cycles(cycle_graph(4), 4);
    EXPECT_EQ(square.labeled, 8u);
    EXPECT_EQ(square.distinct, 1u);
    EXPECT_THROW(count_cycles(g.graph(), 2), InvalidArgument);
    EXPECT_THROW(count_cycles(g.graph(), 9), InvalidArgument);
}

TEST(CountCycles, G8Triangles) {
    const auto g = build_base_graph(2);
    EXPECT_EQ(count_cycles(g.graph(), 3).distinct, 7560u);
}

TEST(CountCycles, MatchesBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = oracle::random_graph(7, 0.5, rng);
        const auto g = oracle::to_graph(m);
        for (int s = 3; s <= 6; ++s) {
            const auto c = count_cycles(g, s);
            ASSERT_EQ(c.labeled, oracle::labeled_cycles(m, s));
            ASSERT_EQ(c.labeled, 2u * s * c.distinct);
        }
    }
}

TEST(Independence, Examples) {
    const auto g = build_base_graph(1);
    const auto r = independence_number(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(2));
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(verify_witness(g.graph(), r));
    EXPECT_TRUE(is_independent_set(g.graph(), ids(g, {"1100", "0011"})));
    EXPECT_EQ(independence_number(edgeless(5)).value, ExtendedCount(5));
    EXPECT_EQ(independence_number(cycle_graph(5)).value, ExtendedCount(2));
}

TEST(Independence, G8IsTen) {
    const auto g = build_base_graph(2);
    const auto r = independence_number(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(10));
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(verify_witness(g.graph(), r));
}

TEST(Independence, BudgetDegradesToBound) {
    const auto g = build_base_graph(2);
    const auto r = independence_number(g.graph(), SolveBudget{1, 0});
    EXPECT_FALSE(r.exact);
    ASSERT_TRUE(r.upper_bound.has_value());
    EXPECT_LE(r.value.value(), 10u);
    EXPECT_GE(*r.upper_bound, 10u);
    EXPECT_TRUE(verify_witness(g.graph(), r));
}

TEST(Chromatic, Examples) {
    const auto g = build_base_graph(1);
    const auto r = chromatic_number(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(3));
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(verify_witness(g.graph(), r));
    // antipodal pairs as colour classes
    std::vector<VertexId> colors(6);
    for (VertexId v = 0; v < 6; ++v) colors[v] = std::min<VertexId>(v, 5 - v);
    EXPECT_TRUE(is_proper_coloring(g.graph(), colors));
    EXPECT_EQ(chromatic_number(edgeless(1)).value, ExtendedCount(1));
    EXPECT_EQ(chromatic_number(cycle_graph(5)).value, ExtendedCount(3));
    EXPECT_EQ(chromatic_number(Graph(0, {})).value, ExtendedCount(0));
}

TEST(Chromatic, G8IsSeven) {
    const auto g = build_base_graph(2);
    const auto r = chromatic_number(g.graph());
    EXPECT_EQ(r.value, ExtendedCount(7));
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(verify_witness(g.graph(), r));
}

TEST(Solvers, AgreeWithExhaustiveOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const double density = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
        const auto m = oracle::random_graph(n, density, rng);
        const auto g = oracle::to_graph(m);
        const auto a = independence_number(g);
        const auto c = chromatic_number(g);
        ASSERT_TRUE(a.exact && c.exact);
        ASSERT_EQ(a.value.value(), static_cast<std::uint64_t>(oracle::alpha(m))) << "trial " << trial;
        ASSERT_EQ(c.value.value(), static_cast<std::uint64_t>(oracle::chi(m))) << "trial " << trial;
        ASSERT_TRUE(verify_witness(g, a));
        ASSERT_TRUE(verify_witness(g, c));
        const int gi = oracle::girth(m);
        const auto gr = girth(g);
        if (gi == 0)
            ASSERT_TRUE(gr.value.is_infinite());
        else
            ASSERT_EQ(gr.value.value(), static_cast<std::uint64_t>(gi));
        // ratio bound
        ASSERT_GE(c.value.value(), (g.size() + a.value.value() - 1) / std::max<std::uint64_t>(a.value.value(), 1));
    }
}

TEST(Solvers, EdgeRemovalMonotonicity) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = oracle::random_graph(10, 0.5, rng);
        auto g = oracle::to_graph(m);
        if (g.edge_count() == 0) continue;
        EdgeSubset sub = EdgeSubset::full(g);
        auto alpha_prev = independence_number(sub).value.value();
        auto chi_prev = chromatic_number(sub).value.value();
        for (std::size_t e = 0; e < g.edge_count(); e += 2) {
            sub.erase(e);
            const auto alpha_now = independence_number(sub).value.value();
            const auto chi_now = chromatic_number(sub).value.value();
            ASSERT_GE(alpha_now, alpha_prev);
            ASSERT_LE(chi_now, chi_prev);
            alpha_prev = alpha_now;
            chi_prev = chi_now;
        }
    }
}

TEST(Independence, AgreesWithBronKerboschOnG8) {
    const auto g = build_base_graph(2);
    EXPECT_EQ(oracle::alpha_bron_kerbosch(oracle::from_graph(g.graph())), 10);
}

TEST(RatioBound, Examples) {
    const auto g4 = build_base_graph(1);
    const auto r = chromatic_lower_bound_ratio(g4, 2);
    EXPECT_EQ(r.bound, 3u);
    EXPECT_NEAR(r.rate, 1.316074, 1e-6);
    const auto g8 = build_base_graph(2);
    EXPECT_EQ(chromatic_lower_bound_ratio(g8, 70).bound, 1u);
    const auto r14 = chromatic_lower_bound_ratio(g8, 14);
    EXPECT_EQ(r14.bound, 5u);
    EXPECT_NEAR(r14.rate, 1.222845, 1e-6);
    EXPECT_THROW(chromatic_lower_bound_ratio(g8, 0), InvalidArgument);
}

TEST(EdgesWithin, Examples) {
    const auto g = build_base_graph(1);
    const auto four = ids(g, {"1100", "0011", "1010", "0101"});
    EXPECT_EQ(edges_within(g.graph(), four), 4u);
    const std::vector<VertexId> all{0, 1, 2, 3, 4, 5};
    EXPECT_EQ(edges_within(g.graph(), all), 12u);
    const std::vector<VertexId> one{2};
    EXPECT_EQ(edges_within(g.graph(), one), 0u);
    const std::vector<VertexId> bad{0, 6};
    EXPECT_THROW(edges_within(g.graph(), bad), InvalidArgument);
}

TEST(MinEdges, Examples) {
    const auto g = build_base_graph(1);
    const auto two = min_edges_over_subsets(g.graph(), 2);
    EXPECT_EQ(two.min_edges, 0u);
    EXPECT_TRUE(two.exact);
    ASSERT_EQ(two.witness.size(), 2u);
    EXPECT_FALSE(g.graph().adjacent(two.witness[0], two.witness[1]));
    EXPECT_EQ(min_edges_over_subsets(g.graph(), 4).min_edges, 4u);
    EXPECT_EQ(min_edges_over_subsets(g.graph(), 6).min_edges, 12u);
    EXPECT_THROW(min_edges_over_subsets(g.graph(), 0), InvalidArgument);
}

TEST(MinEdges, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = oracle::random_graph(10, 0.5, rng);
        const auto g = oracle::to_graph(m);
        for (std::size_t l = 1; l <= 10; ++l) {
            const auto r = min_edges_over_subsets(g, l);
            ASSERT_EQ(r.min_edges, static_cast<std::uint64_t>(oracle::min_edges(m, static_cast<int>(l))));
            ASSERT_EQ(edges_within(g, r.witness), r.min_edges);
        }
    }
}

TEST(MinEdges, GuardAndHeuristic) {
    const auto g = build_base_graph(2);
    EXPECT_THROW(min_edges_over_subsets(g.graph(), 20), ResourceError);
    const auto h = min_edges_over_subsets(g.graph(), 20, MinEdgesOptions{5'000'000, true});
    EXPECT_FALSE(h.exact);
    EXPECT_EQ(h.witness.size(), 20u);
    EXPECT_EQ(edges_within(g.graph(), h.witness), h.min_edges);
    // an 11-set always spans an edge since alpha = 10
    const auto h11 = min_edges_over_subsets(g.graph(), 11, MinEdgesOptions{0, true});
    EXPECT_GE(h11.min_edges, 1u);
}

TEST(GirthReduction, Examples) {
    const std::vector<Graph> tri{cycle_graph(3)};
    auto r = family_girth_reduction(tri);
    EXPECT_EQ(r.shortest_cycles, std::vector<std::uint64_t>{3});
    EXPECT_EQ(r.required_girth_ceiling, 3u);
    const std::vector<Graph> two{cycle_graph(3), cycle_graph(5)};
    r = family_girth_reduction(two);
    EXPECT_EQ(r.shortest_cycles, (std::vector<std::uint64_t>{3, 5}));
    EXPECT_EQ(r.required_girth_ceiling, 5u);
    const std::vector<Graph> forest{path_graph(4)};
    EXPECT_THROW(family_girth_reduction(forest), ForestError);
}
