// Command-line front end: generate | play | solve | oracle | bench.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "baker/cli.hpp"

using namespace baker;

namespace {

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoi(tok));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Baker game strategies and approximation schemes"};
    app.require_subcommand(1);
    cli::RunConfig cfg;
    std::string sizes = "5,10,20,30,40";

    auto graph_flags = [&](CLI::App* c) {
        c->add_option("--graph", cfg.graph_path, "graph file");
        c->add_option("--gen", cfg.gen, "generator spec, e.g. grid:3,3");
        c->add_option("--embedding", cfg.embedding_path, "embedding file");
    };
    auto common = [&](CLI::App* c) {
        c->add_option("--seed", cfg.seed, "random seed");
        c->add_option("--out", cfg.out_path, "write the report here instead of stdout");
        c->add_flag("!--no-timing", cfg.timing, "omit wall-clock times from reports");
    };
    auto solver_flags = [&](CLI::App* c) {
        c->add_option("--problem", cfg.problem, "domset | mis | ccolorable")->check(CLI::IsMember({"domset", "mis", "ccolorable"}));
        c->add_option("--k", cfg.k, "accuracy parameter")->check(CLI::PositiveNumber);
        c->add_option("--c", cfg.c, "colours for ccolorable")->check(CLI::Range(1, 16));
        c->add_option("--strategy", cfg.strategy, "strategy descriptor");
        c->add_flag("!--no-memo", cfg.memo, "disable the subproblem cache");
    };

    auto* gen = app.add_subcommand("generate", "write a generated graph");
    gen->add_option("--gen", cfg.gen, "generator spec")->required();
    gen->add_option("--embedding-out", cfg.embedding_out, "write the embedding (diag grids)");
    common(gen);

    auto* play = app.add_subcommand("play", "play a strategy against a Preserver");
    graph_flags(play);
    common(play);
    play->add_option("--strategy", cfg.strategy, "strategy descriptor");
    play->add_option("--preserver", cfg.preserver, "exhaustive | greedy | random");
    play->add_option("--rseq", cfg.rseq, "const:<c> | geom:<a>,<b> | schedule:<problem>:<k>");
    play->add_option("--round-cap", cfg.round_cap, "stop after this many rounds");
    play->add_flag("!--no-transcript", cfg.transcript, "omit the move list");

    auto* solve = app.add_subcommand("solve", "run an approximation scheme");
    graph_flags(solve);
    common(solve);
    solver_flags(solve);
    solve->add_flag("--oracle", cfg.oracle, "also compute the exact optimum");

    auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
    graph_flags(oracle);
    common(oracle);
    oracle->add_option("--problem", cfg.problem, "domset | mis | ccolorable")->check(CLI::IsMember({"domset", "mis", "ccolorable"}));
    oracle->add_option("--c", cfg.c, "colours for ccolorable")->check(CLI::Range(1, 16));

    auto* bench = app.add_subcommand("bench", "time the solver across a generator sweep");
    common(bench);
    solver_flags(bench);
    bench->add_option("--family", cfg.family, "grid (sizes are sides) or path, cycle, apex, ...");
    bench->add_option("--sizes", sizes, "comma-separated sizes");
    bench->add_option("--time-limit-ms", cfg.time_limit_ms, "per-run limit; stops the sweep when hit");
    bench->add_flag("--oracle", cfg.oracle, "ratio against the exact optimum where small enough");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    cli::CmdResult r;
    try {
        cfg.sizes = parse_sizes(sizes);
        r = cli::run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return cli::kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitError;
    }
    std::string body = r.text.empty() ? r.report.dump(2) + "\n" : r.text;
    if (cfg.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(cfg.out_path);
        out << body;
        if (!out) {
            std::cerr << "error: cannot write " << cfg.out_path << '\n';
            return cli::kExitError;
        }
    }
    if (r.code != cli::kExitOk && !r.report.empty() && r.report.contains("error"))
        std::cerr << r.report["error"].get<std::string>() << '\n';
    return r.code;
}
