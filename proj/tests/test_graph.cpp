#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "baker/generators.hpp"
#include "baker/graph.hpp"
#include "baker/io.hpp"
#include "baker/layering.hpp"
#include "baker/rseq.hpp"
#include "baker/schedule.hpp"

using namespace baker;

namespace {

OrderedGraph graph(int n, std::vector<Edge> e) { return OrderedGraph::from_edges(n, e); }

} // namespace

TEST(OrderedGraph, RejectsLoopsAndDuplicates) {
    EXPECT_THROW(graph(2, {{0, 0}}), GraphError);
    EXPECT_THROW(graph(2, {{0, 1}, {1, 0}}), GraphError);
    EXPECT_THROW(graph(2, {{0, 2}}), GraphError);
    auto g = graph(3, {{2, 0}, {1, 2}});
    EXPECT_EQ(g.m(), 2u);
    EXPECT_TRUE(g.adjacent(0, 2));
    EXPECT_FALSE(g.adjacent(0, 1));
}

TEST(OrderedGraph, InducedKeepsOrderAndAnnotations) {
    auto g = gen_path(5);
    g.annotate("demand", 1);
    g.annotate("demand", 4);
    std::vector<Vertex> keep{1, 2, 4};
    auto h = g.induced(keep);
    EXPECT_EQ(h.n(), 3);
    EXPECT_EQ(h.m(), 1u);
    EXPECT_TRUE(h.adjacent(0, 1));
    ASSERT_NE(h.annotation("demand"), nullptr);
    EXPECT_EQ(*h.annotation("demand"), (std::vector<Vertex>{0, 2}));
    EXPECT_EQ(h, g.induced_sparse(keep));
}

TEST(BfsLayering, PathAndGrid) {
    auto p = gen_path(3);
    EXPECT_EQ(bfs_layering(p, 0), (Layering{0, 1, 2}));
    EXPECT_EQ(bfs_layering(graph(1, {}), 0), (Layering{0}));
    auto g = gen_grid(3, 3);
    auto l = bfs_layering(g, 0);
    EXPECT_EQ(l[0], 0);
    EXPECT_EQ(l[8], 4);
    EXPECT_TRUE(is_geodesic(g, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8}, l));
}

TEST(BfsLayering, DisconnectedNamesVertices) {
    try {
        bfs_layering(graph(3, {{0, 1}}), 0);
        FAIL();
    } catch (const DisconnectedGraph& e) {
        EXPECT_EQ(e.a, 0);
        EXPECT_EQ(e.b, 2);
    }
}

TEST(SpreadLayering, Examples) {
    EXPECT_EQ(spread_componentwise_layering(graph(4, {{0, 1}, {2, 3}}), 3), (Layering{3, 3, 6, 6}));
    EXPECT_EQ(spread_componentwise_layering(gen_path(4), 5), (Layering{5, 5, 5, 5}));
    EXPECT_EQ(spread_componentwise_layering(graph(3, {}), 1), (Layering{1, 2, 3}));
    EXPECT_THROW(spread_componentwise_layering(graph(3, {}), 0), GraphError);
}

TEST(SpreadLayering, ShortWindowsMeetOneComponent) {
    auto g = gen_random(30, 0.04, 7);
    for (Label r = 1; r <= 4; ++r) {
        auto l = spread_componentwise_layering(g, r);
        auto comp = connected_components(g);
        for (Label lo = 0; lo <= 35 * r; ++lo) {
            std::set<int> seen;
            for (int v = 0; v < g.n(); ++v)
                if (l[v] >= lo && l[v] < lo + r) seen.insert(comp[v]);
            EXPECT_LE(seen.size(), 1u);
        }
    }
}

TEST(LayeringWidth, Examples) {
    EXPECT_EQ(layering_width(Layering{0, 0, 1}), 2u);
    EXPECT_EQ(layering_width(bfs_layering(gen_path(6), 0)), 1u);
    EXPECT_EQ(layering_width(Layering{}), 0u);
}

TEST(Geodesic, Examples) {
    auto p = gen_path(3);
    std::vector<Vertex> ends{0, 2};
    EXPECT_TRUE(is_geodesic(p, ends, std::vector<Label>{0, 2}));
    EXPECT_FALSE(is_geodesic(p, ends, std::vector<Label>{0, 3}));
    EXPECT_THROW(is_geodesic(gen_complete(3), std::vector<Vertex>{0, 1, 2}, std::vector<Label>{0, 1, 2}), GraphError);
}

TEST(Geodesic, ExtensionExamples) {
    auto p = gen_path(3);
    std::vector<Vertex> ends{0, 2};
    EXPECT_EQ(extend_geodesic_layering(p, ends, std::vector<Label>{0, 2}), (Layering{0, 1, 2}));
    auto flat = extend_geodesic_layering(p, ends, std::vector<Label>{0, 0});
    EXPECT_EQ(flat, (Layering{0, -1, 0}));
    EXPECT_TRUE(is_layering(p, flat));
    try {
        extend_geodesic_layering(p, ends, std::vector<Label>{0, 5});
        FAIL();
    } catch (const GeodesicViolation& e) {
        EXPECT_EQ(std::min(e.x, e.y), 0);
        EXPECT_EQ(std::max(e.x, e.y), 2);
    }
}

TEST(Geodesic, UnreachableComponentsGetZero) {
    auto g = graph(4, {{0, 1}, {2, 3}});
    EXPECT_EQ(extend_geodesic_layering(g, std::vector<Vertex>{1}, std::vector<Label>{5}), (Layering{4, 5, 0, 0}));
}

TEST(Quotient, Examples) {
    auto p4 = gen_path(4);
    EXPECT_EQ(quotient(p4, {{0, 1}, {2, 3}}), graph(2, {{0, 1}}));
    EXPECT_EQ(quotient(p4, {{0}, {1}, {2}, {3}}), p4);
    EXPECT_EQ(quotient(gen_cycle(4), {{0, 1}, {2}, {3}}), gen_complete(3));
    EXPECT_THROW(quotient(p4, {{0, 2}, {1, 3}}), GraphError);
    EXPECT_THROW(quotient(p4, {{0, 1}, {1, 2, 3}}), GraphError);
}

TEST(ChordalOrdering, Examples) {
    auto t = check_chordal_ordering(gen_complete(3));
    EXPECT_TRUE(t.chordal);
    EXPECT_EQ(t.max_left_degree, 2);
    EXPECT_FALSE(check_chordal_ordering(gen_cycle(4)).chordal);
    auto e = check_chordal_ordering(graph(4, {}));
    EXPECT_TRUE(e.chordal);
    EXPECT_EQ(e.max_left_degree, 0);
}

TEST(ChordalOrdering, KTreesAreChordal) {
    for (int d = 0; d <= 3; ++d)
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto c = check_chordal_ordering(gen_ktree(25, d, seed));
            EXPECT_TRUE(c.chordal);
            EXPECT_LE(c.max_left_degree, d);
        }
}

TEST(ChordalOrdering, AgreesWithBruteForce) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto g = gen_random(7, 0.45, seed);
        bool ok = true;
        for (Vertex v = 0; v < g.n(); ++v)
            for (Vertex a = 0; a < v; ++a)
                for (Vertex b = a + 1; b < v; ++b)
                    if (g.adjacent(v, a) && g.adjacent(v, b) && !g.adjacent(a, b)) ok = false;
        EXPECT_EQ(check_chordal_ordering(g).chordal, ok) << seed;
    }
}

TEST(GeodesicPartition, Examples) {
    auto p4 = gen_path(4);
    GeodesicPartition singletons{{{0}, {1}, {2}, {3}}, {{0}, {0}, {0}, {0}}, p4};
    EXPECT_TRUE(check_geodesic_partition(p4, singletons, 1).ok);
    GeodesicPartition whole{{{0, 1, 2, 3}}, {{0, 1, 2, 3}}, graph(1, {})};
    EXPECT_TRUE(check_geodesic_partition(p4, whole, 1).ok);
    GeodesicPartition gap{{{0, 1, 2, 3}}, {{0, 3, 4, 5}}, graph(1, {})};
    auto c = check_geodesic_partition(p4, gap, 4);
    EXPECT_FALSE(c.ok);
    EXPECT_FALSE(c.diagnostic.empty());
    GeodesicPartition wide{{{0, 1, 2, 3}}, {{0, 0, 1, 1}}, graph(1, {})};
    EXPECT_FALSE(check_geodesic_partition(p4, wide, 1).ok);
}

TEST(Io, GraphRoundTrip) {
    auto g = gen_grid(3, 4);
    g.annotate("forbidden", 5);
    std::stringstream s;
    write_graph(s, g);
    EXPECT_EQ(read_graph(s), g);
}

TEST(Io, ParseErrorsCarryLine) {
    std::stringstream s("p graph 3 1\n# comment\ne 0 7\n");
    try {
        read_graph(s);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3);
    }
    std::stringstream missing("p graph 3 2\ne 0 1\n");
    EXPECT_THROW(read_graph(missing), ParseError);
}

TEST(Io, EmbeddingRoundTrip) {
    auto [g, e] = gen_diag_grid(2);
    std::stringstream s;
    write_embedding(s, e);
    auto back = read_embedding(s);
    EXPECT_EQ(back.dim, 3);
    EXPECT_EQ(back.coords, e.coords);
    EXPECT_NO_THROW(validate_embedding(g, back));
}

TEST(Generators, Examples) {
    auto c4 = gen_grid(2, 2);
    EXPECT_EQ(c4.n(), 4);
    EXPECT_EQ(c4.m(), 4u);
    auto apex = gen_apex_grid(2);
    EXPECT_EQ(apex.n(), 5);
    EXPECT_EQ(apex.degree(0), 4);
    auto [u2, e] = gen_diag_grid(2);
    EXPECT_EQ(u2.n(), 8);
    EXPECT_EQ(u2.m(), 28u);
    for (const auto& c : e.coords)
        for (double x : c) EXPECT_TRUE(x == 0.0 || x == 1.0);
    EXPECT_THROW(gen_grid(0, 3), GraphError);
}

TEST(RSequence, HeadTailAndComposition) {
    auto r = RSequence::with_prefix({5, 7}, RSequence::constant(2));
    EXPECT_EQ(r.head(), 5);
    EXPECT_EQ(r.tail().head(), 7);
    EXPECT_EQ(r.tail(2).head(), 2);
    EXPECT_EQ(r.tail(3).tail(4).at(5), r.tail(7).at(5));
    auto g = RSequence::geometric(1.5, 2.0);
    EXPECT_EQ(g.at(1), 3);
    EXPECT_EQ(g.at(3), 12);
    EXPECT_TRUE(RSequence::constant(1).dominated_by(RSequence::constant(2)));
    EXPECT_FALSE(RSequence::constant(3).dominated_by(r));
}

TEST(RSequence, Thinnings) {
    auto r = RSequence::with_prefix({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, RSequence::constant(11));
    auto even = r.every_second();
    EXPECT_EQ(even.at(1), 2);
    EXPECT_EQ(even.at(3), 6);
    // i_0 = 0, i_1 = 0 + 1*1 + 1 = 2, i_2 = 2 + 3 + 1 = 6, i_3 = 6 + 7 + 1 = 14.
    auto q = r.quotient_thinned(1);
    EXPECT_EQ(q.at(1), 1);
    EXPECT_EQ(q.at(2), 3);
    EXPECT_EQ(q.at(3), 7);
    EXPECT_EQ(q.at(4), 11);
    EXPECT_EQ(q.tail(2).head(), 7);
}

TEST(RSequence, Parse) {
    EXPECT_EQ(RSequence::parse("const:3").at(9), 3);
    EXPECT_EQ(RSequence::parse("geom:1,3").at(2), 9);
    EXPECT_EQ(RSequence::parse("schedule:mis:1").head(), EpsSchedule(Problem::IndependentSet, 1).ell(1));
    EXPECT_THROW(RSequence::parse("const:0"), std::invalid_argument);
    EXPECT_THROW(RSequence::parse("nope"), std::invalid_argument);
}

TEST(Schedule, Lengths) {
    // eps_1 = 1/4 for k = 1: mis ell = 1 + floor(2 * (1 + 8)) = 19.
    EXPECT_EQ(EpsSchedule(Problem::IndependentSet, 1).ell(1), 19);
    // domset: max(2/eps, 6*1*2) = max(8, 12) = 12, ell = 1 + 26 = 27.
    EXPECT_EQ(EpsSchedule(Problem::DominatingSet, 1).ell(1), 27);
    // ccolorable: smallest even integer >= 2 * 2 * 2 = 8.
    EXPECT_EQ(EpsSchedule(Problem::ColorableSubgraph, 1).ell(1), 8);
    EXPECT_EQ(EpsSchedule(Problem::ColorableSubgraph, 2).ell(1), 12);
    EXPECT_EQ(EpsSchedule(Problem::IndependentSet, 1).ell(200), kMaxIntervalLength);
    double sum = 0;
    EpsSchedule s(Problem::DominatingSet, 3);
    for (int i = 1; i < 60; ++i) sum += s.eps(i);
    EXPECT_NEAR(sum, 0.25, 1e-12);
}

TEST(Saturation, Arithmetic) {
    EXPECT_EQ(sat_mul(kSaturated / 2, 3), kSaturated);
    EXPECT_EQ(sat_add(kSaturated - 1, 5), kSaturated);
    EXPECT_EQ(sat_mul(0, kSaturated), 0);
}
