#include <gtest/gtest.h>

#include <sstream>

#include "baker/decomposition.hpp"
#include "baker/game.hpp"
#include "baker/generators.hpp"

using namespace baker;

namespace {

OrderedGraph graph(int n, std::vector<Edge> e) { return OrderedGraph::from_edges(n, e); }

GameState start(OrderedGraph g, std::int64_t c) { return GameState::initial(std::move(g), RSequence::constant(c)); }

std::int64_t worst(const Strategy& s, const GameState& st, std::int64_t cap = 2000) {
    auto r = minimax_rounds(s, st, cap);
    EXPECT_TRUE(r.rounds.has_value());
    return r.rounds.value_or(-1);
}

std::vector<std::vector<int>> kept_sets(const GameState& s, const Layering& l, const std::vector<Interval>& ivs) {
    std::vector<std::vector<int>> out;
    for (const auto& iv : ivs) {
        std::vector<int> k;
        for (int i = 0; i < s.size(); ++i)
            if (iv.contains(l[i])) k.push_back(i);
        out.push_back(k);
    }
    return out;
}

} // namespace

TEST(GameState, DeleteRemovesSmallest) {
    auto s = start(gen_complete(3), 1);
    auto t = apply_delete(s);
    EXPECT_EQ(t.alive, (std::vector<Vertex>{1, 2}));
    EXPECT_EQ(t.graph.m(), 1u);
    EXPECT_EQ(t.round, 1);
    auto one = apply_delete(apply_delete(t));
    EXPECT_TRUE(one.over());
    EXPECT_THROW(apply_delete(one), GameOver);
}

TEST(GameState, RestrictExamples) {
    auto s = start(gen_path(3), 2);
    auto l = bfs_layering(s.graph, 0);
    auto p2 = apply_restrict(s, l, {0, 1});
    EXPECT_EQ(p2.alive, (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(p2.graph.m(), 1u);
    EXPECT_TRUE(apply_restrict(s, l, {7, 8}).over());
    auto same = apply_restrict(start(gen_path(3), 3), l, {0, 2});
    EXPECT_EQ(same.size(), 3);
    EXPECT_EQ(same.round, 1);
    EXPECT_THROW(apply_restrict(s, l, {0, 2}), IllegalMove);
    EXPECT_THROW(apply_restrict(s, Layering{0, 2, 2}, {0, 1}), IllegalMove);
}

TEST(LegalReplies, DedupByVertexSet) {
    auto s = start(gen_path(3), 2);
    Layering l{0, 1, 2};
    auto r = legal_replies(s, l);
    EXPECT_EQ(kept_sets(s, l, r), (std::vector<std::vector<int>>{{0}, {0, 1}, {1, 2}, {2}}));
    EXPECT_EQ(r.front(), (Interval{-1, 0}));
    EXPECT_EQ(r.back(), (Interval{2, 3}));

    auto flat = start(graph(3, {}), 1);
    EXPECT_EQ(legal_replies(flat, Layering{4, 4, 4}).size(), 1u);

    auto wide = start(gen_path(3), 3);
    auto all = kept_sets(wide, l, legal_replies(wide, l));
    EXPECT_NE(std::find(all.begin(), all.end(), std::vector<int>{0, 1, 2}), all.end());
    EXPECT_THROW(legal_replies(s, Layering{0, 2, 0}), IllegalMove);
}

TEST(LegalReplies, ShadowLabelsSplitOutcomes) {
    auto s = start(graph(1, {}), 3);
    EXPECT_EQ(legal_replies(s, Layering{0}).size(), 1u);
    EXPECT_EQ(legal_replies(s, Layering{0}, {2}).size(), 2u);
    EXPECT_EQ(legal_replies(s, Layering{0}, {9}).size(), 1u);
}

TEST(Play, EmptyAndDeleteOnly) {
    DeleteOnlyStrategy del;
    GreedyPreserver greedy;
    auto t0 = play(del, greedy, start(graph(0, {}), 1), 10);
    EXPECT_TRUE(t0.won);
    EXPECT_EQ(t0.rounds(), 0);
    DeleteOnlyStrategy del2;
    auto t = play(del2, greedy, start(gen_path(6), 1), 6);
    EXPECT_TRUE(t.won);
    EXPECT_EQ(t.rounds(), 6);
    DeleteOnlyStrategy del3;
    auto short_budget = play(del3, greedy, start(gen_path(6), 1), 5);
    EXPECT_FALSE(short_budget.won);
    EXPECT_TRUE(short_budget.valid);
}

TEST(Play, IllegalActionInvalidatesTranscript) {
    struct Bad final : StrategyImpl<Bad> {
        StrategySpec spec() const override { return StrategySpec::edgeless(); }
        Action decide(const GameState& t) override { return Action::restrict(Layering(t.alive.size(), 0)); }
    };
    struct Wide final : Preserver {
        Interval reply(const GameState&, const Action&, const Strategy&) override { return {0, 5}; }
    };
    Bad bad;
    Wide wide;
    auto t = play(bad, wide, start(gen_path(3), 2), 10);
    EXPECT_FALSE(t.valid);
    EXPECT_FALSE(t.won);
    EXPECT_NE(t.diagnostic.find("longer"), std::string::npos);

    struct Broken final : StrategyImpl<Broken> {
        StrategySpec spec() const override { return StrategySpec::edgeless(); }
        Action decide(const GameState& t) override {
            Layering l(t.alive.size());
            for (std::size_t i = 0; i < l.size(); ++i) l[i] = 3 * static_cast<Label>(i);
            return Action::restrict(l);
        }
    };
    Broken broken;
    GreedyPreserver greedy;
    auto u = play(broken, greedy, start(gen_path(3), 2), 10);
    EXPECT_FALSE(u.valid);
    EXPECT_NE(u.diagnostic.find("invalid layering"), std::string::npos);
}

TEST(Play, TranscriptReplays) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto plan = std::get<MinorFreePlan>(strategy_minor_free(gen_grid(3, 3), 5));
        RandomPreserver rp(seed);
        auto st = GameState::initial(plan.decomposition.graph, RSequence::constant(2));
        auto t = play(*plan.strategy, rp, st, 5000);
        ASSERT_TRUE(t.won) << t.diagnostic;
        EXPECT_TRUE(replay(st, t).over());
        std::ostringstream log;
        write_transcript(log, t);
        EXPECT_NE(log.str().find("round 1 | action restrict | reply ["), std::string::npos);
    }
}

TEST(Edgeless, SpacingKeepsOneVertex) {
    auto s = start(graph(5, {}), 3);
    EdgelessStrategy e;
    auto a = e.next_action(s);
    EXPECT_EQ(a.layering, (Layering{3, 6, 9, 12, 15}));
    for (const auto& iv : legal_replies(s, a.layering)) EXPECT_LE(apply_restrict(s, a.layering, iv).size(), 1);
    EXPECT_EQ(worst(EdgelessStrategy{}, s), 2);
    EXPECT_EQ(worst(EdgelessStrategy{}, start(graph(0, {}), 3)), 0);
    EXPECT_LE(worst(EdgelessStrategy{}, start(graph(1, {}), 3)), 2);
    EdgelessStrategy bad;
    EXPECT_THROW(bad.next_action(start(gen_path(2), 1)), StrategyError);
}

TEST(Bounds, Values) {
    auto one = RSequence::constant(1), two = RSequence::constant(2);
    EXPECT_EQ(round_bound(StrategySpec::edgeless(), one), 2);
    EXPECT_EQ(round_bound(StrategySpec::chordal(0), two), 2);
    EXPECT_EQ(round_bound(StrategySpec::chordal(1), one), 4);
    EXPECT_EQ(round_bound(StrategySpec::chordal(1), two), 9);
    EXPECT_EQ(round_bound(StrategySpec::distortion(3, 1.0), one), 11);
    // Quotient over an inner bound m = 2 with d = 1, r = 1: i_1 = 2, i_2 = 4.
    EXPECT_EQ(round_bound(StrategySpec::quotient(StrategySpec::edgeless(), 1), one), 4);
    EXPECT_EQ(quotient_phase_start(two, 2, 3), 15);
    EXPECT_EQ(round_bound(StrategySpec::layer_nest(1, 200), two), kSaturated);
    EXPECT_LT(round_bound(StrategySpec::minor_free(5), two), kSaturated);
}

TEST(Chordal, ZeroIsEdgeless) {
    auto s = start(graph(4, {}), 2);
    ChordalStrategy c(0);
    EXPECT_EQ(c.next_action(s).layering, EdgelessStrategy{}.fork()->next_action(s).layering);
}

TEST(Chordal, PathWithinBound) {
    for (int n = 1; n <= 6; ++n)
        for (std::int64_t c : {1, 2}) {
            auto s = start(gen_path(n), c);
            EXPECT_LE(worst(ChordalStrategy(1), s), round_bound(StrategySpec::chordal(1), s.rseq)) << n;
        }
}

TEST(Chordal, TriangleAndKTrees) {
    auto tri = start(gen_complete(3), 2);
    EXPECT_LE(worst(ChordalStrategy(2), tri), round_bound(StrategySpec::chordal(2), tri.rseq));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto s = start(gen_ktree(7, 2, seed), 1);
        EXPECT_LE(worst(ChordalStrategy(2), s, 5000), round_bound(StrategySpec::chordal(2), s.rseq));
    }
}

TEST(Chordal, RejectsOutsideClass) {
    ChordalStrategy c(1);
    EXPECT_THROW(c.next_action(start(gen_cycle(4), 1)), StrategyError);
    ChordalStrategy d(1);
    EXPECT_THROW(d.next_action(start(gen_complete(3), 1)), StrategyError);
}

TEST(CliqueSum, StarWithCenterBase) {
    auto s = start(gen_star(3), 2);
    auto base = std::make_shared<EdgelessStrategy>();
    auto leaf = std::make_shared<EdgelessStrategy>();
    auto cs = strategy_cliquesum(base, leaf, {0});
    auto bound = round_bound(cs->spec(), s.rseq);
    EXPECT_LE(worst(*cs, s), bound);
}

TEST(CliqueSum, LiftsBaseLabelsOntoComponents) {
    // Base edge 0-1; vertex 2 hangs off 0 and vertex 3 off 1.
    auto g = graph(4, {{0, 1}, {0, 2}, {1, 3}});
    auto s = start(g, 2);
    auto cs = strategy_cliquesum(std::make_shared<ChordalStrategy>(1), std::make_shared<EdgelessStrategy>(), {0, 1});
    std::vector<Layering> seen;
    for (int round = 0; round < 4; ++round) {
        auto a = cs->next_action(s);
        ASSERT_FALSE(a.is_delete());
        seen.push_back(a.layering);
        Label lo = *std::min_element(a.layering.begin(), a.layering.end());
        cs->observe(Interval{lo, lo + 1});
        s = apply_restrict(s, a.layering, {lo, lo + 1});
        ASSERT_EQ(s.size(), 4);
    }
    // Rounds: componentwise, lifted base spread, componentwise, lifted BFS.
    EXPECT_EQ(seen[1], Layering(4, seen[1][0]));
    EXPECT_EQ(seen[3], (Layering{0, 1, 0, 1}));
}

TEST(CliqueSum, DegenerateBases) {
    auto s = start(graph(3, {}), 1);
    auto e = std::make_shared<EdgelessStrategy>();
    auto whole = strategy_cliquesum(e, e, {0, 1, 2});
    EXPECT_LE(worst(*whole, s), round_bound(whole->spec(), s.rseq));
    auto path = start(gen_path(4), 2);
    auto c1 = std::make_shared<ChordalStrategy>(1);
    auto none = strategy_cliquesum(c1, c1, {});
    // Empty base: one componentwise Restrict, 2 t1 Deletes, then the leaf.
    auto a = none->next_action(path);
    EXPECT_FALSE(a.is_delete());
    EXPECT_LE(worst(*strategy_cliquesum(c1, c1, {}), path), round_bound(none->spec(), path.rseq));
}

TEST(Quotient, SingletonPartsMatchInner) {
    auto g = gen_path(4);
    GeodesicPartition gp{{{0}, {1}, {2}, {3}}, {{0}, {0}, {0}, {0}}, g};
    auto q = strategy_quotient(std::make_shared<ChordalStrategy>(1), g, gp, 1);
    auto s = start(g, 1);
    EXPECT_LE(worst(*q, s), round_bound(q->spec(), s.rseq));
}

TEST(Quotient, OnePartIsRestrictThenDeletes) {
    auto g = gen_path(4);
    GeodesicPartition gp{{{0, 1, 2, 3}}, {{0, 1, 2, 3}}, graph(1, {})};
    auto q = strategy_quotient(std::make_shared<EdgelessStrategy>(), g, gp, 1);
    auto s = start(g, 2);
    auto a = q->next_action(s);
    ASSERT_FALSE(a.is_delete());
    EXPECT_EQ(a.layering, (Layering{0, 1, 2, 3}));
    q->observe(Interval{1, 2});
    auto s1 = apply_restrict(s, a.layering, {1, 2});
    EXPECT_TRUE(q->next_action(s1).is_delete());
    EXPECT_THROW(strategy_quotient(std::make_shared<EdgelessStrategy>(), g, gp, 0), std::invalid_argument);
    GeodesicPartition bad{{{0, 1, 2, 3}}, {{0, 0, 1, 1}}, graph(1, {})};
    EXPECT_THROW(strategy_quotient(std::make_shared<EdgelessStrategy>(), g, bad, 1), StrategyError);
}

TEST(Subgraph, IdenticalAndEmpty) {
    auto plan = std::get<MinorFreePlan>(strategy_minor_free(gen_cycle(4), 4));
    auto host = GameState::initial(plan.decomposition.graph, RSequence::constant(2));
    auto same = strategy_subgraph(plan.strategy->fork(), host);
    EXPECT_EQ(worst(*same, host), worst(*plan.strategy, host));
    auto empty = GameState::make(host.host, {}, RSequence::constant(2));
    EXPECT_EQ(worst(*strategy_subgraph(plan.strategy->fork(), host), empty), 0);
}

TEST(Subgraph, PathInsideCycleNeverSlower) {
    auto plan = std::get<MinorFreePlan>(strategy_minor_free(gen_cycle(4), 4));
    const auto& h = plan.decomposition.graph;
    auto host = GameState::initial(h, RSequence::constant(2));
    auto host_rounds = worst(*plan.strategy, host);
    for (Vertex drop = 0; drop < 4; ++drop) {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < 4; ++v)
            if (v != drop) keep.push_back(v);
        auto sub = GameState::make(host.host, keep, RSequence::constant(1));
        auto wrapped = strategy_subgraph(plan.strategy->fork(), host);
        EXPECT_LE(worst(*wrapped, sub), host_rounds);
        // The same subgraph as a separate graph through an injection.
        auto p3 = h.induced(keep);
        auto sep = GameState::initial(p3, RSequence::constant(2));
        auto inj = strategy_subgraph(plan.strategy->fork(), host, &p3, keep);
        EXPECT_LE(worst(*inj, sep), host_rounds);
    }
}

TEST(Distortion, DiagonalGridWithinEleven) {
    auto [g, e] = gen_diag_grid(2);
    auto s = start(g, 1);
    auto d = strategy_distortion(g, e);
    EXPECT_LE(worst(*d, s), 11);
    EXPECT_EQ(round_bound(d->spec(), s.rseq), 11);
}

TEST(Distortion, SmallExamples) {
    Embedding one{1, {{0.0}}, 1.0};
    auto g1 = graph(1, {});
    EXPECT_LE(worst(*strategy_distortion(g1, one), start(g1, 1)), 1 + 2);
    Embedding far{1, {{0.0}, {10.0}}, 1.0};
    auto g2 = graph(2, {});
    auto d = strategy_distortion(g2, far);
    auto s = start(g2, 1);
    auto a = d->next_action(s);
    for (const auto& iv : legal_replies(s, a.layering)) EXPECT_LE(apply_restrict(s, a.layering, iv).size(), 1);
    Embedding close{1, {{0.0}, {0.5}}, 1.0};
    EXPECT_THROW(strategy_distortion(g2, close), GraphError);
}

TEST(Decomposition, Triangle) {
    auto r = chordal_geodesic_partition(gen_complete(3), 4);
    auto& op = std::get<OrderedPartition>(r);
    EXPECT_EQ(op.partition.parts, (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));
    auto c = check_chordal_ordering(op.partition.quotient);
    EXPECT_TRUE(c.chordal);
    EXPECT_EQ(c.max_left_degree, 2);
}

TEST(Decomposition, K4Witness) {
    auto g = gen_complete(4);
    auto r = chordal_geodesic_partition(g, 4);
    auto& w = std::get<MinorWitness>(r);
    EXPECT_EQ(w.branch_sets, (std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {3}}));
    EXPECT_EQ(w.verify(g), "");
    EXPECT_THROW(chordal_geodesic_partition(g, 2), std::invalid_argument);
}

TEST(Decomposition, SingleVertexAndForests) {
    auto one = std::get<OrderedPartition>(chordal_geodesic_partition(graph(1, {}), 3));
    EXPECT_EQ(one.partition.parts.size(), 1u);
    EXPECT_EQ(one.partition.quotient.m(), 0u);
    for (auto g : {gen_path(5), gen_star(4)}) {
        auto op = std::get<OrderedPartition>(chordal_geodesic_partition(g, 3));
        EXPECT_TRUE(check_geodesic_partition(op.graph, op.partition, 1).ok);
        auto c = check_chordal_ordering(op.partition.quotient);
        EXPECT_TRUE(c.chordal);
        EXPECT_LE(c.max_left_degree, 1);
    }
}

TEST(Decomposition, GridsAndApexGrids) {
    for (int n = 1; n <= 6; ++n) {
        auto op = std::get<OrderedPartition>(chordal_geodesic_partition(gen_grid(n, n), 5));
        EXPECT_TRUE(check_geodesic_partition(op.graph, op.partition, 3).ok) << n;
        auto c = check_chordal_ordering(op.partition.quotient);
        EXPECT_TRUE(c.chordal);
        EXPECT_LE(c.max_left_degree, 3);
        auto ap = std::get<OrderedPartition>(chordal_geodesic_partition(gen_apex_grid(n), 6));
        EXPECT_TRUE(check_geodesic_partition(ap.graph, ap.partition, 4).ok) << n;
        EXPECT_LE(check_chordal_ordering(ap.partition.quotient).max_left_degree, 4);
    }
}

TEST(MinorFree, GridWithinBound) {
    auto plan = std::get<MinorFreePlan>(strategy_minor_free(gen_grid(3, 3), 5));
    for (std::int64_t c : {1, 2}) {
        auto s = GameState::initial(plan.decomposition.graph, RSequence::constant(c));
        EXPECT_LE(worst(*plan.strategy, s, 5000), round_bound(plan.strategy->spec(), s.rseq));
    }
}
