#pragma once

// Command implementations behind tools/baker_cli. Each command returns an
// exit code and a JSON report.

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "baker/descriptor.hpp"
#include "baker/game.hpp"
#include "baker/generators.hpp"
#include "baker/io.hpp"
#include "baker/oracle.hpp"
#include "baker/ptas.hpp"

namespace baker::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitClassViolation = 3;
inline constexpr int kExitBudget = 4;

struct RunConfig {
    std::string command;
    std::string graph_path, gen, embedding_path;
    std::string problem = "mis";
    int k = 2;
    int c = 2;
    std::string strategy = "minorfree:5";
    std::string preserver = "exhaustive";
    std::string rseq = "const:1";
    std::uint64_t seed = 1;
    std::int64_t round_cap = kDefaultRoundCap;
    bool oracle = false;
    bool memo = true;
    bool timing = true;
    bool transcript = true;
    std::int64_t time_limit_ms = 0;
    std::string family = "grid";
    std::vector<int> sizes;
    std::string out_path, embedding_out;
};

struct CmdResult {
    int code = kExitOk;
    Json report;
    std::string text; // printed instead of the report when set
};

/// Generator specs: grid:R,C  apex:N  diag:N  ktree:N,D  path:N  cycle:N
/// star:L  complete:N  random:N,P. Random families draw from `seed`.
struct Generated {
    OrderedGraph graph;
    std::optional<Embedding> embedding;
};

inline Generated generate(const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("generator spec needs '<family>:<args>'");
    std::string fam = spec.substr(0, colon);
    std::vector<double> a;
    std::stringstream ss(spec.substr(colon + 1));
    for (std::string tok; std::getline(ss, tok, ',');) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty()) throw std::invalid_argument("bad generator argument '" + tok + "'");
        a.push_back(x);
    }
    auto need = [&](std::size_t n) {
        if (a.size() != n) throw std::invalid_argument(fam + " takes " + std::to_string(n) + " argument(s)");
    };
    auto i = [&](std::size_t j) { return static_cast<int>(a[j]); };
    Generated g;
    if (fam == "grid") need(2), g.graph = gen_grid(i(0), i(1));
    else if (fam == "apex") need(1), g.graph = gen_apex_grid(i(0));
    else if (fam == "diag") {
        need(1);
        auto [graph, e] = gen_diag_grid(i(0));
        g.graph = std::move(graph);
        g.embedding = std::move(e);
    } else if (fam == "ktree") need(2), g.graph = gen_ktree(i(0), i(1), seed);
    else if (fam == "path") need(1), g.graph = gen_path(i(0));
    else if (fam == "cycle") need(1), g.graph = gen_cycle(i(0));
    else if (fam == "star") need(1), g.graph = gen_star(i(0));
    else if (fam == "complete") need(1), g.graph = gen_complete(i(0));
    else if (fam == "random") need(2), g.graph = gen_random(i(0), a[1], seed);
    else throw std::invalid_argument("unknown generator family '" + fam + "'");
    return g;
}

namespace detail {

inline Generated load(const RunConfig& cfg) {
    Generated g;
    if (!cfg.gen.empty() == !cfg.graph_path.empty()) throw std::invalid_argument("give exactly one of --graph and --gen");
    if (!cfg.gen.empty()) {
        g = generate(cfg.gen, cfg.seed);
    } else {
        std::ifstream in(cfg.graph_path);
        if (!in) throw std::runtime_error("cannot open " + cfg.graph_path);
        g.graph = read_graph(in);
    }
    if (!cfg.embedding_path.empty()) {
        std::ifstream in(cfg.embedding_path);
        if (!in) throw std::runtime_error("cannot open " + cfg.embedding_path);
        g.embedding = read_embedding(in);
    }
    return g;
}

inline Json witness_json(const ClassViolation& e) {
    Json j;
    j["error"] = "class violation";
    j["detail"] = e.what();
    if (e.witness) j["minor_witness"] = e.witness->branch_sets;
    return j;
}

inline Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

inline std::unique_ptr<Preserver> make_preserver(const RunConfig& cfg) {
    if (cfg.preserver == "exhaustive") return std::make_unique<ExhaustivePreserver>(cfg.round_cap);
    if (cfg.preserver == "greedy") return std::make_unique<GreedyPreserver>();
    if (cfg.preserver == "random") return std::make_unique<RandomPreserver>(cfg.seed);
    throw std::invalid_argument("unknown preserver '" + cfg.preserver + "'");
}

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct SolveRun {
    Solution sol;        // vertices in input order
    std::int64_t budget = 0;
    std::optional<std::int64_t> optimum;
    double ms = 0;
};

/// Solves `problem` on g with the descriptor; vertices of the result refer to g.
inline SolveRun run_solver(const RunConfig& cfg, const OrderedGraph& g, const Embedding* e, bool with_oracle) {
    Problem p = parse_problem(cfg.problem);
    SolveRun run;
    EpsSchedule sched(p, cfg.k);
    SolveOptions opt;
    opt.memo = cfg.memo;
    opt.time_limit = std::chrono::milliseconds(cfg.time_limit_ms);
    run.ms = time_ms([&] {
        auto built = build_strategy(cfg.strategy, g, e);
        run.budget = round_bound(built.strategy->spec(), RSequence::schedule(sched));
        switch (p) {
        case Problem::DominatingSet: run.sol = solve_domset(DomSetInstance::plain(built.graph), *built.strategy, sched, opt); break;
        case Problem::IndependentSet: run.sol = solve_mis(ISInstance::plain(built.graph), *built.strategy, sched, opt); break;
        case Problem::ColorableSubgraph:
            run.sol = solve_ccolorable(ColorInstance::plain(built.graph, cfg.c), *built.strategy, sched, opt);
            break;
        }
        std::vector<std::pair<Vertex, int>> mapped;
        for (std::size_t i = 0; i < run.sol.chosen.size(); ++i)
            mapped.emplace_back(built.order[run.sol.chosen[i]], run.sol.colors.empty() ? 0 : run.sol.colors[i]);
        std::sort(mapped.begin(), mapped.end());
        run.sol.chosen.clear();
        if (!run.sol.colors.empty()) run.sol.colors.clear();
        for (auto [v, col] : mapped) {
            run.sol.chosen.push_back(v);
            if (p == Problem::ColorableSubgraph) run.sol.colors.push_back(col);
        }
    });
    std::string bad;
    switch (p) {
    case Problem::DominatingSet: bad = check_solution(DomSetInstance::plain(g), run.sol); break;
    case Problem::IndependentSet: bad = check_solution(ISInstance::plain(g), run.sol); break;
    case Problem::ColorableSubgraph: bad = check_solution(ColorInstance::plain(g, cfg.c), run.sol); break;
    }
    if (run.sol.feasible && !bad.empty()) throw std::logic_error("solver returned an invalid solution: " + bad);
    if (with_oracle) {
        switch (p) {
        case Problem::DominatingSet: run.optimum = oracle_domset(DomSetInstance::plain(g)); break;
        case Problem::IndependentSet: run.optimum = oracle_mis(ISInstance::plain(g)); break;
        case Problem::ColorableSubgraph: run.optimum = oracle_ccolorable(ColorInstance::plain(g, cfg.c)); break;
        }
    }
    return run;
}

} // namespace detail

inline CmdResult cmd_generate(const RunConfig& cfg) {
    if (cfg.gen.empty()) throw std::invalid_argument("generate needs --gen");
    Generated g = generate(cfg.gen, cfg.seed);
    std::ostringstream text;
    write_graph(text, g.graph);
    CmdResult r;
    r.text = text.str();
    if (!cfg.embedding_out.empty()) {
        if (!g.embedding) throw std::invalid_argument(cfg.gen + " has no embedding");
        std::ofstream out(cfg.embedding_out);
        write_embedding(out, *g.embedding);
        if (!out) throw std::runtime_error("cannot write " + cfg.embedding_out);
    }
    return r;
}

inline CmdResult cmd_play(const RunConfig& cfg) {
    CmdResult r;
    Generated g = detail::load(cfg);
    BuiltStrategy built;
    try {
        built = build_strategy(cfg.strategy, g.graph, g.embedding ? &*g.embedding : nullptr);
    } catch (const ClassViolation& e) {
        return {kExitClassViolation, detail::witness_json(e), {}};
    }
    RSequence rseq = RSequence::parse(cfg.rseq);
    const std::int64_t bound = round_bound(built.strategy->spec(), rseq);
    auto pres = detail::make_preserver(cfg);
    Transcript t;
    double ms = detail::time_ms([&] { t = play(*built.strategy, *pres, GameState::initial(built.graph, rseq), cfg.round_cap); });
    Json& j = r.report;
    j["command"] = "play";
    j["n"] = g.graph.n();
    j["m"] = g.graph.m();
    j["strategy"] = cfg.strategy;
    j["preserver"] = cfg.preserver;
    j["rseq"] = rseq.describe();
    j["round_bound"] = bound;
    j["rounds"] = t.rounds();
    j["won"] = t.won;
    j["valid"] = t.valid;
    if (!t.valid) j["diagnostic"] = t.diagnostic;
    j["within_bound"] = t.valid && t.won && t.rounds() <= bound;
    if (cfg.transcript) {
        Json moves = Json::array();
        for (const auto& m : t.moves) {
            Json mv;
            mv["round"] = m.round;
            mv["action"] = m.restrict ? "restrict" : "delete";
            mv["reply"] = m.reply ? detail::interval_json(*m.reply) : Json(nullptr);
            mv["n"] = m.n_after;
            moves.push_back(std::move(mv));
        }
        j["transcript"] = std::move(moves);
    }
    if (cfg.timing) j["wall_time_ms"] = ms;
    if (!t.valid) r.code = kExitError;
    else if (!j["within_bound"].get<bool>()) r.code = kExitBudget;
    return r;
}

inline CmdResult cmd_solve(const RunConfig& cfg) {
    CmdResult r;
    Generated g = detail::load(cfg);
    detail::SolveRun run;
    try {
        run = detail::run_solver(cfg, g.graph, g.embedding ? &*g.embedding : nullptr, cfg.oracle);
    } catch (const ClassViolation& e) {
        return {kExitClassViolation, detail::witness_json(e), {}};
    } catch (const BudgetExceeded& e) {
        return {kExitBudget, Json{{"error", "budget exceeded"}, {"detail", e.what()}}, {}};
    }
    Json& j = r.report;
    j["problem"] = cfg.problem;
    j["k"] = cfg.k;
    if (cfg.problem == "ccolorable") j["c"] = cfg.c;
    j["n"] = g.graph.n();
    j["m"] = g.graph.m();
    j["strategy"] = cfg.strategy;
    j["rounds_budget"] = run.budget;
    j["feasible"] = run.sol.feasible;
    j["vertices"] = run.sol.chosen;
    if (cfg.problem == "ccolorable") j["colors"] = run.sol.colors;
    j["size"] = run.sol.size();
    if (run.optimum) {
        j["oracle_optimum"] = *run.optimum;
        j["ratio"] = *run.optimum == 0 ? 1.0 : static_cast<double>(run.sol.size()) / static_cast<double>(*run.optimum);
    }
    Json levels = Json::array();
    for (const auto& lc : run.sol.provenance) {
        Json l;
        l["level"] = lc.level;
        l["ell"] = lc.ell;
        l["cover"] = lc.residue;
        Json ivs = Json::array();
        for (const auto& iv : lc.intervals) ivs.push_back(detail::interval_json(iv));
        l["intervals"] = std::move(ivs);
        levels.push_back(std::move(l));
    }
    j["per_level"] = std::move(levels);
    if (run.sol.provenance_truncated) j["per_level_truncated"] = true;
    if (cfg.timing) j["wall_time_ms"] = run.ms;
    if (!run.sol.feasible) r.code = kExitInfeasible;
    return r;
}

inline CmdResult cmd_oracle(const RunConfig& cfg) {
    Generated g = detail::load(cfg);
    Problem p = parse_problem(cfg.problem);
    CmdResult r;
    Json& j = r.report;
    j["problem"] = cfg.problem;
    j["n"] = g.graph.n();
    Solution sol;
    switch (p) {
    case Problem::DominatingSet: {
        auto s = oracle_domset_solution(DomSetInstance::plain(g.graph));
        if (s) sol = *s;
        break;
    }
    case Problem::IndependentSet: sol = oracle_mis_solution(ISInstance::plain(g.graph)); break;
    case Problem::ColorableSubgraph: sol = oracle_ccolorable_solution(ColorInstance::plain(g.graph, cfg.c)); break;
    }
    j["feasible"] = sol.feasible;
    j["optimum"] = sol.size();
    j["vertices"] = sol.chosen;
    if (p == Problem::ColorableSubgraph) j["colors"] = sol.colors;
    if (!sol.feasible) r.code = kExitInfeasible;
    return r;
}

/// Least-squares fit t = C n^2 and the worst ratio between a point and the fit.
struct QuadraticFit {
    double c = 0, worst = 0;
    bool within(double factor) const { return worst <= factor; }
};

inline QuadraticFit fit_quadratic(const std::vector<std::pair<double, double>>& pts) {
    QuadraticFit f;
    double num = 0, den = 0;
    for (auto [n, t] : pts) num += t * n * n, den += n * n * n * n;
    f.c = den > 0 ? num / den : 0;
    for (auto [n, t] : pts) {
        double pred = f.c * n * n;
        double q = pred > 0 && t > 0 ? std::max(t / pred, pred / t) : INFINITY;
        f.worst = std::max(f.worst, q);
    }
    return f;
}

/// Sweeps the family over `sizes` (grid side, or n for the other families).
inline CmdResult cmd_bench(const RunConfig& cfg) {
    CmdResult r;
    Json rows = Json::array();
    std::vector<std::pair<double, double>> pts;
    bool complete = true;
    for (int s : cfg.sizes) {
        std::string spec = cfg.family == "grid" ? "grid:" + std::to_string(s) + "," + std::to_string(s)
                                                : cfg.family + ":" + std::to_string(s);
        Generated g = generate(spec, cfg.seed);
        Json row;
        row["size"] = s;
        row["n"] = g.graph.n();
        try {
            auto run = detail::run_solver(cfg, g.graph, g.embedding ? &*g.embedding : nullptr,
                                          cfg.oracle && g.graph.n() <= kOracleMaxN);
            row["time_ms"] = run.ms;
            row["rounds_budget"] = run.budget;
            row["value"] = run.sol.size();
            if (run.optimum) row["ratio"] = run.optimum == 0 ? 1.0 : static_cast<double>(run.sol.size()) / *run.optimum;
            pts.emplace_back(g.graph.n(), run.ms);
        } catch (const TimedOut&) {
            row["timed_out"] = true;
            row["time_limit_ms"] = cfg.time_limit_ms;
            complete = false;
        }
        rows.push_back(std::move(row));
        if (!complete) break; // larger sizes only take longer
    }
    Json& j = r.report;
    j["command"] = "bench";
    j["family"] = cfg.family;
    j["problem"] = cfg.problem;
    j["k"] = cfg.k;
    j["strategy"] = cfg.strategy;
    j["rows"] = std::move(rows);
    auto fit = fit_quadratic(pts);
    j["fit"] = Json{{"c", fit.c}, {"worst_factor", fit.worst}, {"complete", complete}, {"within_3x", complete && fit.within(3.0)}};
    return r;
}

inline CmdResult run(const RunConfig& cfg) {
    if (cfg.command == "generate") return cmd_generate(cfg);
    if (cfg.command == "play") return cmd_play(cfg);
    if (cfg.command == "solve") return cmd_solve(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    if (cfg.command == "bench") return cmd_bench(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

} // namespace baker::cli
