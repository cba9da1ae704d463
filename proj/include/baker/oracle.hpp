#pragma once

// Exact optima by branch and bound, for checking the approximation schemes
// on small inputs.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "baker/ptas.hpp"

namespace baker {

class OracleLimit : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxN = 25;
inline constexpr int kOracleMaxColorN = 15;

namespace detail {

inline void oracle_cap(int n, int cap) {
    if (n > cap) throw OracleLimit("oracle limited to " + std::to_string(cap) + " vertices, got " + std::to_string(n));
}

struct DomSetSearch {
    const DomSetInstance& inst;
    std::vector<int> covered; // times dominated
    std::vector<char> in;
    std::vector<Vertex> cur, best;
    bool found = false;

    void toggle(Vertex v, int delta) {
        covered[v] += delta;
        for (Vertex w : inst.graph.neighbors(v)) covered[w] += delta;
    }

    void run() {
        if (found && cur.size() >= best.size()) return;
        // First open constraint: an undominated demand vertex, else an unhit hit-set.
        std::vector<Vertex> options;
        for (Vertex v = 0; v < inst.graph.n(); ++v)
            if (inst.demand[v] && covered[v] == 0) {
                options.push_back(v);
                for (Vertex w : inst.graph.neighbors(v)) options.push_back(w);
                break;
            }
        if (options.empty())
            for (const auto& h : inst.hits) {
                bool hit = false;
                for (Vertex x : h) hit = hit || in[x];
                if (!hit) {
                    options = h;
                    break;
                }
            }
        if (options.empty()) {
            if (!found || cur.size() < best.size()) best = cur, found = true;
            return;
        }
        if (found && cur.size() + 1 >= best.size()) return;
        for (Vertex v : options) {
            if (in[v]) continue;
            in[v] = 1;
            cur.push_back(v);
            toggle(v, 1);
            run();
            toggle(v, -1);
            cur.pop_back();
            in[v] = 0;
        }
    }
};

struct ISSearch {
    const OrderedGraph& g;
    std::vector<char> alive;
    int cur = 0, best = 0;
    std::vector<Vertex> cur_set, best_set;

    void run(int remaining) {
        if (cur + remaining <= best) return;
        Vertex pick = -1;
        int pick_deg = -1;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (!alive[v]) continue;
            int deg = 0;
            for (Vertex w : g.neighbors(v)) deg += alive[w];
            if (deg > pick_deg) pick = v, pick_deg = deg;
        }
        if (pick < 0) {
            if (cur > best) best = cur, best_set = cur_set;
            return;
        }
        if (pick_deg == 0) { // the rest is independent
            std::vector<Vertex> rest;
            for (Vertex v = 0; v < g.n(); ++v)
                if (alive[v]) rest.push_back(v);
            if (cur + static_cast<int>(rest.size()) > best) {
                best = cur + static_cast<int>(rest.size());
                best_set = cur_set;
                best_set.insert(best_set.end(), rest.begin(), rest.end());
            }
            return;
        }
        // Take pick.
        std::vector<Vertex> removed{pick};
        alive[pick] = 0;
        for (Vertex w : g.neighbors(pick))
            if (alive[w]) alive[w] = 0, removed.push_back(w);
        ++cur;
        cur_set.push_back(pick);
        run(remaining - static_cast<int>(removed.size()));
        cur_set.pop_back();
        --cur;
        for (Vertex w : removed) alive[w] = 1;
        // Leave pick out.
        alive[pick] = 0;
        run(remaining - 1);
        alive[pick] = 1;
    }
};

struct ColorSearch {
    const ColorInstance& inst;
    std::vector<int> color;
    bool symmetric = false;
    int cur = 0, best = -1;
    std::vector<int> best_color;

    void run(Vertex v, int max_used) {
        const int n = inst.graph.n();
        if (cur + (n - v) <= best) return;
        if (v == n) {
            best = cur;
            best_color = color;
            return;
        }
        for (int c = 1; c <= inst.c; ++c) {
            if (!(inst.lists[v] >> (c - 1) & 1)) continue;
            if (symmetric && c > max_used + 1) break;
            bool ok = true;
            for (Vertex w : inst.graph.neighbors(v))
                if (w < v && color[w] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[v] = c;
            ++cur;
            run(v + 1, std::max(max_used, c));
            --cur;
            color[v] = 0;
        }
        run(v + 1, max_used);
    }
};

} // namespace detail

/// Smallest dominating set of the demand that hits every hit-set, or nothing.
inline std::optional<Solution> oracle_domset_solution(const DomSetInstance& inst, int cap = kOracleMaxN) {
    detail::oracle_cap(inst.graph.n(), cap);
    detail::DomSetSearch s{inst, std::vector<int>(inst.graph.n(), 0), std::vector<char>(inst.graph.n(), 0), {}, {}};
    for (const auto& h : inst.hits)
        if (h.empty()) return std::nullopt;
    s.run();
    if (!s.found) return std::nullopt;
    Solution sol;
    sol.feasible = true;
    sol.chosen = s.best;
    std::sort(sol.chosen.begin(), sol.chosen.end());
    return sol;
}

inline std::optional<std::int64_t> oracle_domset(const DomSetInstance& inst, int cap = kOracleMaxN) {
    auto s = oracle_domset_solution(inst, cap);
    if (!s) return std::nullopt;
    return s->size();
}

inline Solution oracle_mis_solution(const ISInstance& inst, int cap = kOracleMaxN) {
    detail::oracle_cap(inst.graph.n(), cap);
    detail::ISSearch s{inst.graph, std::vector<char>(inst.graph.n(), 1), 0, 0, {}, {}};
    int remaining = 0;
    for (Vertex v = 0; v < inst.graph.n(); ++v) {
        s.alive[v] = !inst.forbidden[v];
        remaining += s.alive[v];
    }
    s.run(remaining);
    Solution sol;
    sol.feasible = true;
    sol.chosen = s.best_set;
    std::sort(sol.chosen.begin(), sol.chosen.end());
    return sol;
}

inline std::int64_t oracle_mis(const ISInstance& inst, int cap = kOracleMaxN) { return oracle_mis_solution(inst, cap).size(); }

inline Solution oracle_ccolorable_solution(const ColorInstance& inst, int cap = kOracleMaxColorN) {
    detail::oracle_cap(inst.graph.n(), cap);
    const ColorList full = (ColorList{1} << inst.c) - 1;
    detail::ColorSearch s{inst, std::vector<int>(inst.graph.n(), 0), false, 0, -1, {}};
    s.symmetric = std::all_of(inst.lists.begin(), inst.lists.end(), [&](ColorList l) { return l == full; });
    s.run(0, 0);
    Solution sol;
    sol.feasible = true;
    for (Vertex v = 0; v < inst.graph.n(); ++v)
        if (s.best_color[v]) {
            sol.chosen.push_back(v);
            sol.colors.push_back(s.best_color[v]);
        }
    return sol;
}

inline std::int64_t oracle_ccolorable(const ColorInstance& inst, int cap = kOracleMaxColorN) {
    return oracle_ccolorable_solution(inst, cap).size();
}

} // namespace baker
