#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "baker/cli.hpp"

using namespace baker;
using cli::RunConfig;

namespace {

RunConfig config(std::string command, std::string gen) {
    RunConfig c;
    c.command = std::move(command);
    c.gen = std::move(gen);
    return c;
}

} // namespace

TEST(Descriptor, ParsesAndPrints) {
    for (std::string s : {"edgeless", "chordal:2", "minorfree:5", "distortion", "cliquesum(chordal:1,edgeless)",
                          "cliquesum(chordal:1,chordal:0,3)", "quotient(chordal:1,1)"})
        EXPECT_EQ(parse_descriptor(s).describe(), s);
}

TEST(Descriptor, Rejects) {
    for (std::string s : {"", "chordal", "chordal:", "minorfree:2", "quotient(chordal:1,0)", "cliquesum(chordal:1)",
                          "cliquesum(minorfree:5,edgeless)", "quotient(quotient(edgeless,1),1)", "chordal:1x", "grid"})
        EXPECT_THROW(parse_descriptor(s), DescriptorError) << s;
}

TEST(Descriptor, ClassChecks) {
    EXPECT_THROW(build_strategy("edgeless", gen_path(2)), ClassViolation);
    EXPECT_THROW(build_strategy("chordal:1", gen_cycle(4)), ClassViolation);
    EXPECT_THROW(build_strategy("chordal:1", gen_complete(3)), ClassViolation);
    EXPECT_NO_THROW(build_strategy("chordal:2", gen_complete(3)));
    EXPECT_THROW(build_strategy("distortion", gen_path(2)), DescriptorError);
    try {
        build_strategy("minorfree:4", gen_complete(4));
        FAIL() << "expected a witness";
    } catch (const ClassViolation& e) {
        ASSERT_TRUE(e.witness);
        EXPECT_EQ(e.witness->branch_sets.size(), 4u);
        EXPECT_EQ(e.witness->verify(gen_complete(4)), "");
    }
}

TEST(Descriptor, MinorFreeReorders) {
    auto g = gen_grid(3, 3);
    auto b = build_strategy("minorfree:5", g);
    ASSERT_EQ(b.order.size(), 9u);
    EXPECT_EQ(relabel(g, b.order), b.graph);
}

TEST(Descriptor, StrategiesWinOnTheirClasses) {
    struct Case {
        std::string desc;
        OrderedGraph g;
    };
    std::vector<Case> cases = {{"chordal:1", gen_path(6)},
                               {"cliquesum(chordal:1,chordal:1,1)", gen_star(4)},
                               {"quotient(chordal:1,1)", gen_path(5)},
                               {"quotient(chordal:2,2)", gen_grid(2, 3)},
                               {"minorfree:5", gen_apex_grid(2)}};
    for (auto& c : cases) {
        auto b = build_strategy(c.desc, c.g);
        auto s0 = GameState::initial(b.graph, RSequence::constant(1));
        auto r = minimax_rounds(*b.strategy, s0);
        ASSERT_FALSE(r.exceeded()) << c.desc;
        EXPECT_LE(*r.rounds, round_bound(b.strategy->spec(), s0.rseq)) << c.desc;
    }
    auto [u2, e] = gen_diag_grid(2);
    auto b = build_strategy("distortion", u2, &e);
    auto r = minimax_rounds(*b.strategy, GameState::initial(b.graph, RSequence::constant(1)));
    ASSERT_FALSE(r.exceeded());
    EXPECT_LE(*r.rounds, 11);
}

TEST(Generate, Specs) {
    EXPECT_EQ(cli::generate("grid:2,2", 1).graph.m(), 4);
    EXPECT_EQ(cli::generate("apex:2", 1).graph.n(), 5);
    auto d = cli::generate("diag:2", 1);
    EXPECT_EQ(d.graph.n(), 8);
    ASSERT_TRUE(d.embedding);
    EXPECT_EQ(cli::generate("ktree:10,2", 7).graph, gen_ktree(10, 2, 7));
    for (std::string bad : {"grid", "grid:2", "grid:a,b", "blob:3", "grid:0,3"})
        EXPECT_ANY_THROW(cli::generate(bad, 1)) << bad;
}

TEST(Cli, PlayGridWithinBound) {
    auto c = config("play", "grid:3,3");
    c.strategy = "minorfree:5";
    c.preserver = "exhaustive";
    c.rseq = "const:2";
    auto r = cli::run(c);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_TRUE(r.report["within_bound"].get<bool>());
    EXPECT_LE(r.report["rounds"].get<long>(), r.report["round_bound"].get<long>());
    EXPECT_EQ(r.report["transcript"].size(), r.report["rounds"].get<std::size_t>());
}

TEST(Cli, SolveMisOnGrid) {
    auto c = config("solve", "grid:4,4");
    c.problem = "mis";
    c.k = 2;
    c.oracle = true;
    auto r = cli::run(c);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_GE(r.report["size"].get<int>(), 4);
    EXPECT_EQ(r.report["oracle_optimum"].get<int>(), 8);
    auto chosen = r.report["vertices"].get<std::vector<Vertex>>();
    Solution s;
    s.feasible = true;
    s.chosen = chosen;
    EXPECT_TRUE(verify_solution(ISInstance::plain(gen_grid(4, 4)), s));
    for (const char* key : {"problem", "k", "n", "m", "strategy", "rounds_budget", "vertices", "size", "per_level",
                            "wall_time_ms"})
        EXPECT_TRUE(r.report.contains(key)) << key;
}

TEST(Cli, SolveColorReportsColours) {
    auto c = config("solve", "cycle:5");
    c.problem = "ccolorable";
    c.c = 2;
    c.k = 5;
    c.strategy = "minorfree:4";
    auto r = cli::run(c);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.report["size"].get<int>(), 4);
    EXPECT_EQ(r.report["colors"].size(), 4u);
}

TEST(Cli, OracleDomsetOnPath) {
    auto c = config("oracle", "path:4");
    c.problem = "domset";
    auto r = cli::run(c);
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.report["optimum"].get<int>(), 2);
}

TEST(Cli, ExitCodes) {
    auto c = config("solve", "complete:5");
    c.strategy = "minorfree:5";
    auto r = cli::run(c);
    EXPECT_EQ(r.code, cli::kExitClassViolation);
    EXPECT_TRUE(r.report.contains("minor_witness"));

    auto p = config("play", "cycle:4");
    p.strategy = "chordal:1";
    EXPECT_EQ(cli::run(p).code, cli::kExitClassViolation);

    auto q = config("play", "path:6");
    q.strategy = "chordal:1";
    q.round_cap = 1;
    EXPECT_EQ(cli::run(q).code, cli::kExitBudget);
}

TEST(Cli, FixedSeedIsByteIdentical) {
    auto c = config("solve", "ktree:9,2");
    c.problem = "mis";
    c.strategy = "chordal:2";
    c.seed = 11;
    c.timing = false;
    EXPECT_EQ(cli::run(c).report.dump(), cli::run(c).report.dump());
    auto p = config("play", "ktree:8,1");
    p.strategy = "chordal:1";
    p.preserver = "random";
    p.seed = 5;
    p.timing = false;
    EXPECT_EQ(cli::run(p).report.dump(), cli::run(p).report.dump());
}

TEST(Cli, GraphFilesRoundTrip) {
    auto g = cli::run(config("generate", "apex:3"));
    const std::string path = testing::TempDir() + "apex3.graph";
    std::ofstream(path) << g.text;
    RunConfig c;
    c.command = "oracle";
    c.graph_path = path;
    c.problem = "mis";
    auto direct = config("oracle", "apex:3");
    direct.problem = "mis";
    EXPECT_EQ(cli::run(c).report["optimum"], cli::run(direct).report["optimum"]);
    std::ofstream(path) << "p graph 2 1\ne 0 5\n";
    EXPECT_THROW(cli::run(c), ParseError);
    std::remove(path.c_str());
}

TEST(Cli, BenchFitsAndStopsOnTimeout) {
    auto fit = cli::fit_quadratic({{10, 100}, {20, 400}, {40, 1600}});
    EXPECT_NEAR(fit.c, 1.0, 1e-12);
    EXPECT_NEAR(fit.worst, 1.0, 1e-12);
    EXPECT_FALSE(cli::fit_quadratic({{10, 1}, {20, 400}}).within(3.0));

    RunConfig c;
    c.command = "bench";
    c.problem = "mis";
    c.family = "grid";
    c.sizes = {2, 3, 40};
    c.time_limit_ms = 200;
    auto r = cli::run(c);
    ASSERT_EQ(r.report["rows"].size(), 3u);
    EXPECT_TRUE(r.report["rows"][2].contains("timed_out"));
    EXPECT_FALSE(r.report["fit"]["within_3x"].get<bool>());
}
