#pragma once

// Game-driven approximation schemes for minimum dominating set, maximum
// independent set and largest c-colourable induced subgraph.
//
// Each solver follows the Destroyer strategy. A Delete of v branches on
// whether v is in the solution; a Restrict with layering lambda tries every
// cover of the integers by intervals of the current length, solves each
// occupied interval's slice one round deeper and keeps the best union.

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <pthread.h>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <chrono>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "baker/bounds.hpp"
#include "baker/covers.hpp"
#include "baker/graph.hpp"
#include "baker/rseq.hpp"
#include "baker/schedule.hpp"
#include "baker/state.hpp"
#include "baker/strategy.hpp"

namespace baker {

struct DomSetInstance {
    OrderedGraph graph;
    std::vector<char> demand;              // per vertex; must be dominated
    std::vector<std::vector<Vertex>> hits; // each needs a solution vertex inside

    static DomSetInstance plain(OrderedGraph g) {
        DomSetInstance i;
        i.demand.assign(static_cast<std::size_t>(g.n()), 1);
        i.graph = std::move(g);
        return i;
    }
};

struct ISInstance {
    OrderedGraph graph;
    std::vector<char> forbidden;

    static ISInstance plain(OrderedGraph g) {
        ISInstance i;
        i.forbidden.assign(static_cast<std::size_t>(g.n()), 0);
        i.graph = std::move(g);
        return i;
    }
};

/// Colours are 1..c; list bit a-1 stands for colour a.
using ColorList = std::uint32_t;

struct ColorInstance {
    OrderedGraph graph;
    int c = 2;
    std::vector<ColorList> lists;

    static ColorInstance plain(OrderedGraph g, int c) {
        if (c < 1 || c > 16) throw std::invalid_argument("c must be in 1..16");
        ColorInstance i;
        i.c = c;
        i.lists.assign(static_cast<std::size_t>(g.n()), (ColorList{1} << c) - 1);
        i.graph = std::move(g);
        return i;
    }
};

/// Cover picked at one Restrict on the path to the returned solution.
struct LevelChoice {
    std::int64_t level = 0;
    Label ell = 0;
    Label residue = 0;
    std::vector<Interval> intervals;
    std::vector<std::vector<int>> plan; // hit-set counts per interval (domset)
};

struct Solution {
    bool feasible = false;
    std::vector<Vertex> chosen; // sorted
    std::vector<int> colors;    // parallel to chosen (ccolorable)
    std::vector<LevelChoice> provenance; // preorder, possibly truncated
    bool provenance_truncated = false;
    std::int64_t size() const { return static_cast<std::int64_t>(chosen.size()); }
};

class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class TimedOut : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    /// Cache of subproblem results keyed by a digest of the instance and
    /// the strategy memory.
    bool memo = true;
    /// Rounds the strategy may use; negative means the strategy's own bound.
    std::int64_t round_budget = -1;
    /// Cover choices kept in the returned solution.
    std::size_t provenance_limit = 256;
    /// Give up (TimedOut) after this long; zero means no limit.
    std::chrono::milliseconds time_limit{0};
};

/// Statistics of one solver run.
struct SolveStats {
    std::size_t calls = 0, memo_hits = 0, restricts = 0, deletes = 0;
};

namespace detail {

constexpr int kMaxHitSets = 20;

/// Residues at which the set of labels inside [s+a, s+b] can change, for
/// interval starts s, over all given offset pairs. Between two consecutive
/// candidates every label keeps its role, so the candidates represent all
/// covers.
inline std::vector<Label> candidate_residues(std::vector<Label> points, Label period, const std::vector<Label>& lower,
                                             const std::vector<Label>& upper) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::set<Label> c{0};
    for (Label x : points) {
        for (Label a : lower) c.insert(floor_mod(x - a + 1, period));
        for (Label b : upper) c.insert(floor_mod(x - b, period));
    }
    return {c.begin(), c.end()};
}

/// One occupied interval of a cover, with the local vertices it keeps and
/// role bits: 1 = in M_1, 2 = in M_r, 4 = in M_2r.
struct SliceShape {
    Interval interval;
    std::vector<int> kept;
    std::vector<std::uint8_t> roles;
    std::vector<Label> shadow_covered;

    bool same_as(const SliceShape& o) const {
        return kept == o.kept && roles == o.roles && shadow_covered == o.shadow_covered;
    }
};

inline std::vector<SliceShape> cover_shapes(const Cover& cover, const Layering& labels, const std::vector<Label>& shadow) {
    std::vector<SliceShape> out;
    for (const auto& iv : occupied_intervals(cover, labels)) {
        SliceShape sh;
        sh.interval = iv;
        const Interval m1 = margin(iv, 1), mr = margin(iv, cover.r), m2r = margin(iv, 2 * cover.r);
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
            Label x = labels[i];
            if (!iv.contains(x)) continue;
            sh.kept.push_back(i);
            sh.roles.push_back(static_cast<std::uint8_t>(m1.contains(x) | (mr.contains(x) << 1) | (m2r.contains(x) << 2)));
        }
        for (Label x : shadow)
            if (iv.contains(x)) sh.shadow_covered.push_back(x);
        std::sort(sh.shadow_covered.begin(), sh.shadow_covered.end());
        sh.shadow_covered.erase(std::unique(sh.shadow_covered.begin(), sh.shadow_covered.end()),
                                sh.shadow_covered.end());
        out.push_back(std::move(sh));
    }
    return out;
}

inline bool same_shapes(const std::vector<SliceShape>& a, const std::vector<SliceShape>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].same_as(b[i])) return false;
    return true;
}

/// Distinct covers for a Restrict: one representative (the smallest
/// residue) per outcome.
struct CoverOption {
    Cover cover;
    std::vector<SliceShape> shapes;
};

inline std::vector<CoverOption> distinct_covers(const GameState& s, const Action& a, Label r) {
    const Label ell = s.rseq.head();
    if (ell <= 2 * r) throw std::invalid_argument("interval length " + std::to_string(ell) + " too short for the covers");
    const Label period = ell - 2 * r;
    std::vector<Label> points(a.layering.begin(), a.layering.end());
    points.insert(points.end(), a.shadow.begin(), a.shadow.end());
    std::vector<Label> lower{0, 1, r, 2 * r}, upper{ell - 1, ell - 2, ell - 1 - r, ell - 1 - 2 * r};
    std::vector<CoverOption> out;
    for (Label rho : candidate_residues(points, period, lower, upper)) {
        Cover c{ell, r, rho};
        auto shapes = cover_shapes(c, a.layering, a.shadow);
        bool dup = false;
        for (const auto& o : out)
            if (same_shapes(o.shapes, shapes)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back({c, std::move(shapes)});
    }
    return out;
}

/// Runs f on a thread with a large stack; games can be thousands of rounds
/// deep and the solvers recurse once per round.
inline void with_large_stack(const std::function<void()>& f, std::size_t bytes = std::size_t{1} << 30) {
    struct Job {
        const std::function<void()>* f;
        std::exception_ptr error;
    } job{&f, nullptr};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, bytes);
    pthread_t th;
    auto body = [](void* p) -> void* {
        auto* j = static_cast<Job*>(p);
        try {
            (*j->f)();
        } catch (...) {
            j->error = std::current_exception();
        }
        return nullptr;
    };
    int rc = pthread_create(&th, &attr, body, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) {
        f(); // no thread available: run inline
        return;
    }
    pthread_join(th, nullptr);
    if (job.error) std::rethrow_exception(job.error);
}

inline void put_chars(std::string& out, const std::vector<char>& v) { out.append(v.begin(), v.end()); }

/// Shared driver state: strategy budget, memo and statistics.
// Memo keys are 128-bit digests of the subproblem encoding.
struct Digest {
    std::uint64_t a = 0, b = 0;
    friend bool operator==(const Digest&, const Digest&) = default;
};

struct DigestHash {
    std::size_t operator()(const Digest& d) const { return static_cast<std::size_t>(d.a ^ (d.b * 0x9e3779b97f4a7c15ULL)); }
};

inline Digest digest(const std::string& key) {
    Digest d;
    d.a = std::hash<std::string>{}(key);
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char ch : key) h = (h ^ ch) * 0x100000001b3ULL;
    d.b = h;
    return d;
}

template <class Result>
struct Engine {
    SolveOptions options;
    std::int64_t budget = 0;
    std::unordered_map<Digest, std::shared_ptr<const Result>, DigestHash> memo;
    SolveStats stats;

    std::shared_ptr<const Result> find(const std::string& key) {
        auto it = memo.find(digest(key));
        if (it == memo.end()) return nullptr;
        ++stats.memo_hits;
        return it->second;
    }
    void store(const std::string& key, std::shared_ptr<const Result> r) { memo.emplace(digest(key), std::move(r)); }

    std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();

    void check_budget(const GameState& s) const {
        if (s.round >= budget)
            throw BudgetExceeded("strategy used its " + std::to_string(budget) + " rounds with " +
                                 std::to_string(s.size()) + " vertices left");
        if ((stats.calls & 1023) == 0 && std::chrono::steady_clock::now() > deadline)
            throw TimedOut("solver ran past its time limit");
    }
};

inline std::int64_t budget_for(const Strategy& strat, const GameState& s, const SolveOptions& o) {
    if (o.round_budget >= 0) return o.round_budget;
    return round_bound(strat.spec(), s.rseq);
}

// Provenance is a tree shared between memoized results.
struct ProvNode {
    LevelChoice choice;
    std::vector<std::shared_ptr<const ProvNode>> children;
};

// Result of a subproblem in host identifiers.
struct Partial {
    bool feasible = false;
    std::vector<Vertex> chosen;
    std::vector<int> colors;
    std::vector<std::shared_ptr<const ProvNode>> provenance;
};

inline std::shared_ptr<const Partial> infeasible() {
    static const auto p = std::make_shared<const Partial>();
    return p;
}

inline std::shared_ptr<const Partial> empty_solution() {
    static const auto p = [] {
        Partial q;
        q.feasible = true;
        return std::make_shared<const Partial>(std::move(q));
    }();
    return p;
}

inline Solution finish(const Partial& p, std::size_t provenance_limit) {
    Solution s;
    s.feasible = p.feasible;
    std::vector<std::pair<Vertex, int>> vc;
    for (std::size_t i = 0; i < p.chosen.size(); ++i) vc.emplace_back(p.chosen[i], p.colors.empty() ? 0 : p.colors[i]);
    std::sort(vc.begin(), vc.end());
    for (auto [v, c] : vc) {
        s.chosen.push_back(v);
        if (!p.colors.empty()) s.colors.push_back(c);
    }
    // Preorder walk of the choices that produced the solution.
    std::vector<const ProvNode*> stack;
    for (auto it = p.provenance.rbegin(); it != p.provenance.rend(); ++it) stack.push_back(it->get());
    while (!stack.empty() && s.provenance.size() < provenance_limit) {
        const ProvNode* node = stack.back();
        stack.pop_back();
        s.provenance.push_back(node->choice);
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) stack.push_back(it->get());
    }
    s.provenance_truncated = !stack.empty();
    return s;
}

/// Union of slice results with the Restrict's own choice first.
inline std::shared_ptr<const Partial> merge(const std::vector<std::shared_ptr<const Partial>>& parts, LevelChoice choice) {
    Partial out;
    out.feasible = true;
    auto node = std::make_shared<ProvNode>();
    node->choice = std::move(choice);
    for (const auto& p : parts) {
        out.chosen.insert(out.chosen.end(), p->chosen.begin(), p->chosen.end());
        out.colors.insert(out.colors.end(), p->colors.begin(), p->colors.end());
        node->children.insert(node->children.end(), p->provenance.begin(), p->provenance.end());
    }
    out.provenance.push_back(std::move(node));
    return std::make_shared<const Partial>(std::move(out));
}

inline std::shared_ptr<const Partial> with_vertex(const Partial& p, Vertex v, int color = 0) {
    Partial out = p;
    out.chosen.push_back(v);
    if (color > 0 || !out.colors.empty()) {
        out.colors.resize(out.chosen.size() - 1, 0);
        out.colors.push_back(color);
    }
    return std::make_shared<const Partial>(std::move(out));
}

inline std::vector<Label> labels_of(const Layering& l, const std::vector<int>& kept) {
    std::vector<Label> out;
    for (int i : kept) out.push_back(l[i]);
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Dominating set

/// Drops duplicate hit-sets and those containing another one.
inline std::vector<std::vector<Vertex>> simplify_hits(std::vector<std::vector<Vertex>> hits) {
    for (auto& h : hits) {
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    std::vector<std::vector<Vertex>> out;
    for (auto& h : hits) {
        bool implied = false;
        for (const auto& o : out)
            if (std::includes(h.begin(), h.end(), o.begin(), o.end())) {
                implied = true;
                break;
            }
        if (!implied) out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

class DomSetSolver {
  public:
    DomSetSolver(SolveOptions o, std::int64_t budget) {
        eng_.options = o;
        eng_.budget = budget;
        if (o.time_limit.count() > 0) eng_.deadline = std::chrono::steady_clock::now() + o.time_limit;
    }

    std::shared_ptr<const Partial> solve(const GameState& s, std::vector<char> demand,
                                         std::vector<std::vector<Vertex>> hits, std::unique_ptr<Strategy> st) {
        ++eng_.stats.calls;
        for (const auto& h : hits)
            if (h.empty()) return infeasible();
        bool any_demand = std::find(demand.begin(), demand.end(), 1) != demand.end();
        if (!any_demand && hits.empty()) return empty_solution();
        if (s.over()) return infeasible();
        if (static_cast<int>(hits.size()) > kMaxHitSets) throw std::length_error("too many pending hit-sets");
        eng_.check_budget(s);

        std::string key;
        if (eng_.options.memo) {
            key.push_back('D');
            put(key, s.round);
            put(key, s.alive);
            put_chars(key, demand);
            for (const auto& h : hits) put(key, h);
            st->encode(key);
            if (auto hit = eng_.find(key)) return hit;
        }
        Action a = st->next_action(s);
        auto result = a.is_delete() ? on_delete(s, demand, hits, std::move(st))
                                    : on_restrict(s, a, demand, hits, std::move(st));
        if (eng_.options.memo) eng_.store(key, result);
        return result;
    }

    SolveStats stats() const { return eng_.stats; }

  private:
    std::shared_ptr<const Partial> on_delete(const GameState& s, const std::vector<char>& demand,
                                             const std::vector<std::vector<Vertex>>& hits,
                                             std::unique_ptr<Strategy> st) {
        ++eng_.stats.deletes;
        st->observe(std::nullopt);
        const Vertex v = s.alive[0];
        GameState next = apply_delete(s);
        std::vector<Vertex> nbrs; // host ids of N(v) among the remaining vertices
        for (Vertex w : s.graph.neighbors(0)) nbrs.push_back(s.alive[w]);

        // v chosen: N[v] is dominated and every hit-set containing v is hit.
        std::shared_ptr<const Partial> in;
        {
            std::vector<char> d(demand.begin() + 1, demand.end());
            for (Vertex w : s.graph.neighbors(0)) d[w - 1] = 0;
            std::vector<std::vector<Vertex>> h;
            for (const auto& x : hits)
                if (!std::binary_search(x.begin(), x.end(), v)) h.push_back(x);
            auto sub = solve(next, std::move(d), std::move(h), st->fork());
            if (sub->feasible) in = with_vertex(*sub, v);
        }
        // v not chosen: a neighbour must take over v's domination.
        std::shared_ptr<const Partial> out;
        {
            bool ok = true;
            std::vector<std::vector<Vertex>> h;
            for (auto x : hits) {
                x.erase(std::remove(x.begin(), x.end(), v), x.end());
                ok = ok && !x.empty();
                h.push_back(std::move(x));
            }
            if (demand[0]) {
                ok = ok && !nbrs.empty();
                h.push_back(nbrs);
            }
            if (ok) {
                std::vector<char> d(demand.begin() + 1, demand.end());
                auto sub = solve(next, std::move(d), simplify_hits(std::move(h)), std::move(st));
                if (sub->feasible) out = sub;
            }
        }
        if (in && (!out || in->chosen.size() <= out->chosen.size())) return in;
        if (out) return out;
        return infeasible();
    }

    std::shared_ptr<const Partial> on_restrict(const GameState& s, const Action& a, const std::vector<char>& demand,
                                               const std::vector<std::vector<Vertex>>& hits,
                                               std::unique_ptr<Strategy> st) {
        ++eng_.stats.restricts;
        const Label r = 1;
        const std::size_t h = hits.size();
        TupleSpace space(std::vector<int>(h, 1));

        std::optional<PlanTuple> best_plan;
        std::vector<std::vector<std::vector<std::shared_ptr<const Partial>>>> best_parts;
        const CoverOption* best_cover = nullptr;
        auto options = distinct_covers(s, a, r);
        for (const auto& opt : options) {
            std::vector<std::vector<std::optional<Cost>>> costs;
            std::vector<std::vector<std::shared_ptr<const Partial>>> parts;
            for (const auto& sh : opt.shapes) {
                std::vector<char> d(sh.kept.size());
                std::vector<char> core(static_cast<std::size_t>(s.size()), 0);
                bool any_demand = false;
                for (std::size_t i = 0; i < sh.kept.size(); ++i) {
                    d[i] = demand[sh.kept[i]] && (sh.roles[i] & 2);
                    any_demand = any_demand || d[i];
                    core[sh.kept[i]] = (sh.roles[i] & 4) != 0;
                }
                // Hit-set j restricted to the slice's core.
                std::vector<std::vector<Vertex>> local_hits(h);
                for (std::size_t j = 0; j < h; ++j)
                    for (Vertex x : hits[j]) {
                        int p = s.local(x);
                        if (p >= 0 && core[p]) local_hits[j].push_back(x);
                    }
                std::optional<GameState> slice;
                std::vector<std::optional<Cost>> row(space.size());
                std::vector<std::shared_ptr<const Partial>> prow(space.size());
                for (std::size_t q = 0; q < space.size(); ++q) {
                    auto tuple = space.decode(q);
                    std::vector<std::vector<Vertex>> assigned;
                    bool ok = true;
                    for (std::size_t j = 0; j < h; ++j)
                        if (tuple[j]) {
                            ok = ok && !local_hits[j].empty();
                            assigned.push_back(local_hits[j]);
                        }
                    if (!ok) continue;
                    std::shared_ptr<const Partial> res;
                    if (!any_demand && assigned.empty()) {
                        res = empty_solution();
                    } else {
                        if (!slice) slice = apply_restrict(s, a.layering, sh.interval);
                        auto child = st->fork();
                        child->observe(sh.interval);
                        res = solve(*slice, d, simplify_hits(std::move(assigned)), std::move(child));
                    }
                    if (res->feasible) {
                        row[q] = static_cast<Cost>(res->chosen.size());
                        prow[q] = res;
                    }
                }
                costs.push_back(std::move(row));
                parts.push_back(std::move(prow));
            }
            auto plan = plan_dp(costs, std::vector<int>(h, 1), PlanMode::Min);
            if (plan && (!best_plan || plan->total < best_plan->total)) {
                best_plan = std::move(plan);
                best_parts = {std::move(parts)};
                best_cover = &opt;
            }
        }
        if (!best_plan) return infeasible();

        LevelChoice choice{s.round + 1, s.rseq.head(), best_cover->cover.residue, {}, best_plan->counts};
        std::vector<std::shared_ptr<const Partial>> chosen;
        for (std::size_t j = 0; j < best_cover->shapes.size(); ++j) {
            choice.intervals.push_back(best_cover->shapes[j].interval);
            chosen.push_back(best_parts[0][j][space.encode(best_plan->counts[j])]);
        }
        auto merged = merge(chosen, std::move(choice));
        certify(s, demand, hits, *merged);
        return merged;
    }

    // Slices dominating their mid-margins must dominate everything.
    static void certify(const GameState& s, const std::vector<char>& demand, const std::vector<std::vector<Vertex>>& hits,
                        const Partial& p) {
        std::vector<char> in(static_cast<std::size_t>(s.size()), 0);
        for (Vertex v : p.chosen) {
            int q = s.local(v);
            if (q < 0) throw std::logic_error("slice solution outside its graph");
            in[q] = 1;
        }
        for (int v = 0; v < s.size(); ++v) {
            if (!demand[v] || in[v]) continue;
            bool dom = false;
            for (Vertex w : s.graph.neighbors(v)) dom = dom || in[w];
            if (!dom) throw std::logic_error("combined slices leave vertex " + std::to_string(s.alive[v]) + " undominated");
        }
        for (const auto& h : hits) {
            bool hit = false;
            for (Vertex x : h) hit = hit || (s.local(x) >= 0 && in[s.local(x)]);
            if (!hit) throw std::logic_error("combined slices miss a hit-set");
        }
    }

    Engine<Partial> eng_;
};

class ISSolver {
  public:
    ISSolver(SolveOptions o, std::int64_t budget) {
        eng_.options = o;
        eng_.budget = budget;
        if (o.time_limit.count() > 0) eng_.deadline = std::chrono::steady_clock::now() + o.time_limit;
    }

    std::shared_ptr<const Partial> solve(const GameState& s, std::vector<char> forbidden, std::unique_ptr<Strategy> st) {
        ++eng_.stats.calls;
        if (std::find(forbidden.begin(), forbidden.end(), 0) == forbidden.end()) return empty_solution();
        eng_.check_budget(s);
        std::string key;
        if (eng_.options.memo) {
            key.push_back('I');
            put(key, s.round);
            put(key, s.alive);
            put_chars(key, forbidden);
            st->encode(key);
            if (auto hit = eng_.find(key)) return hit;
        }
        Action a = st->next_action(s);
        std::shared_ptr<const Partial> result;
        if (a.is_delete()) {
            ++eng_.stats.deletes;
            st->observe(std::nullopt);
            GameState next = apply_delete(s);
            std::shared_ptr<const Partial> in;
            if (!forbidden[0]) {
                std::vector<char> f(forbidden.begin() + 1, forbidden.end());
                for (Vertex w : s.graph.neighbors(0)) f[w - 1] = 1;
                in = with_vertex(*solve(next, std::move(f), st->fork()), s.alive[0]);
            }
            auto out = solve(next, std::vector<char>(forbidden.begin() + 1, forbidden.end()), std::move(st));
            result = in && in->chosen.size() >= out->chosen.size() ? in : out;
        } else {
            ++eng_.stats.restricts;
            std::shared_ptr<const Partial> best;
            for (const auto& opt : distinct_covers(s, a, 1)) {
                std::vector<std::shared_ptr<const Partial>> parts;
                std::size_t total = 0;
                for (const auto& sh : opt.shapes) {
                    std::vector<char> f(sh.kept.size());
                    bool open = false;
                    for (std::size_t i = 0; i < sh.kept.size(); ++i) {
                        f[i] = forbidden[sh.kept[i]] || !(sh.roles[i] & 4);
                        open = open || !f[i];
                    }
                    if (!open) continue;
                    auto child = st->fork();
                    child->observe(sh.interval);
                    parts.push_back(solve(apply_restrict(s, a.layering, sh.interval), std::move(f), std::move(child)));
                    total += parts.back()->chosen.size();
                }
                if (!best || total > best->chosen.size()) {
                    LevelChoice choice{s.round + 1, s.rseq.head(), opt.cover.residue, {}, {}};
                    for (const auto& sh : opt.shapes) choice.intervals.push_back(sh.interval);
                    best = merge(parts, std::move(choice));
                }
            }
            result = best;
        }
        if (eng_.options.memo) eng_.store(key, result);
        return result;
    }

    SolveStats stats() const { return eng_.stats; }

  private:
    Engine<Partial> eng_;
};

class ColorSolver {
  public:
    ColorSolver(SolveOptions o, std::int64_t budget, int c) : c_(c) {
        eng_.options = o;
        eng_.budget = budget;
        if (o.time_limit.count() > 0) eng_.deadline = std::chrono::steady_clock::now() + o.time_limit;
    }

    std::shared_ptr<const Partial> solve(const GameState& s, std::vector<ColorList> lists, std::unique_ptr<Strategy> st) {
        ++eng_.stats.calls;
        if (std::all_of(lists.begin(), lists.end(), [](ColorList l) { return l == 0; })) return empty_solution();
        eng_.check_budget(s);
        std::string key;
        if (eng_.options.memo) {
            key.push_back('C');
            put(key, s.round);
            put(key, s.alive);
            for (ColorList l : lists) put(key, static_cast<std::int64_t>(l));
            st->encode(key);
            if (auto hit = eng_.find(key)) return hit;
        }
        Action a = st->next_action(s);
        std::shared_ptr<const Partial> result;
        if (a.is_delete()) {
            ++eng_.stats.deletes;
            st->observe(std::nullopt);
            GameState next = apply_delete(s);
            for (int col = 1; col <= c_; ++col) {
                if (!(lists[0] >> (col - 1) & 1)) continue;
                std::vector<ColorList> l(lists.begin() + 1, lists.end());
                for (Vertex w : s.graph.neighbors(0)) l[w - 1] &= ~(ColorList{1} << (col - 1));
                auto sub = with_vertex(*solve(next, std::move(l), st->fork()), s.alive[0], col);
                if (!result || sub->chosen.size() > result->chosen.size()) result = sub;
            }
            auto skip = solve(next, std::vector<ColorList>(lists.begin() + 1, lists.end()), std::move(st));
            if (!result || skip->chosen.size() > result->chosen.size()) result = skip;
        } else {
            ++eng_.stats.restricts;
            std::shared_ptr<const Partial> best;
            for (const auto& opt : distinct_covers(s, a, 0)) {
                std::vector<std::shared_ptr<const Partial>> parts;
                std::size_t total = 0;
                for (const auto& sh : opt.shapes) {
                    std::vector<int> inner;
                    std::vector<ColorList> l;
                    bool open = false;
                    for (std::size_t i = 0; i < sh.kept.size(); ++i)
                        if (sh.roles[i] & 1) {
                            inner.push_back(static_cast<int>(i));
                            l.push_back(lists[sh.kept[i]]);
                            open = open || lists[sh.kept[i]] != 0;
                        }
                    if (!open) continue;
                    GameState slice = apply_restrict(s, a.layering, sh.interval);
                    auto child = st->fork();
                    child->observe(sh.interval);
                    parts.push_back(solve(slice.restricted(inner, slice.rseq, slice.round), std::move(l), std::move(child)));
                    total += parts.back()->chosen.size();
                }
                if (!best || total > best->chosen.size()) {
                    LevelChoice choice{s.round + 1, s.rseq.head(), opt.cover.residue, {}, {}};
                    for (const auto& sh : opt.shapes) choice.intervals.push_back(sh.interval);
                    best = merge(parts, std::move(choice));
                }
            }
            result = best;
        }
        if (eng_.options.memo) eng_.store(key, result);
        return result;
    }

    SolveStats stats() const { return eng_.stats; }

  private:
    int c_;
    Engine<Partial> eng_;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Entry points. The strategy is forked, so the caller's copy is untouched; if
// it has not been started it starts on the instance graph.

inline Solution solve_domset(const DomSetInstance& inst, const Strategy& strat, const EpsSchedule& sched,
                             SolveOptions opt = {}, SolveStats* stats = nullptr) {
    if (sched.problem() != Problem::DominatingSet) throw std::invalid_argument("schedule is not for domset");
    if (static_cast<int>(inst.demand.size()) != inst.graph.n()) throw std::invalid_argument("demand size mismatch");
    auto s = GameState::initial(inst.graph, RSequence::schedule(sched));
    detail::DomSetSolver solver(opt, detail::budget_for(strat, s, opt));
    std::vector<std::vector<Vertex>> hits = inst.hits;
    for (const auto& h : hits)
        for (Vertex v : h)
            if (v < 0 || v >= inst.graph.n()) throw std::invalid_argument("hit-set vertex out of range");
    std::shared_ptr<const detail::Partial> p;
    detail::with_large_stack([&] { p = solver.solve(s, inst.demand, simplify_hits(std::move(hits)), strat.fork()); });
    if (stats) *stats = solver.stats();
    return detail::finish(*p, opt.provenance_limit);
}

inline Solution solve_mis(const ISInstance& inst, const Strategy& strat, const EpsSchedule& sched, SolveOptions opt = {},
                          SolveStats* stats = nullptr) {
    if (sched.problem() != Problem::IndependentSet) throw std::invalid_argument("schedule is not for mis");
    if (static_cast<int>(inst.forbidden.size()) != inst.graph.n()) throw std::invalid_argument("forbidden size mismatch");
    auto s = GameState::initial(inst.graph, RSequence::schedule(sched));
    detail::ISSolver solver(opt, detail::budget_for(strat, s, opt));
    std::shared_ptr<const detail::Partial> p;
    detail::with_large_stack([&] { p = solver.solve(s, inst.forbidden, strat.fork()); });
    if (stats) *stats = solver.stats();
    return detail::finish(*p, opt.provenance_limit);
}

inline Solution solve_ccolorable(const ColorInstance& inst, const Strategy& strat, const EpsSchedule& sched,
                                 SolveOptions opt = {}, SolveStats* stats = nullptr) {
    if (sched.problem() != Problem::ColorableSubgraph) throw std::invalid_argument("schedule is not for ccolorable");
    if (static_cast<int>(inst.lists.size()) != inst.graph.n()) throw std::invalid_argument("list count mismatch");
    auto s = GameState::initial(inst.graph, RSequence::schedule(sched));
    detail::ColorSolver solver(opt, detail::budget_for(strat, s, opt), inst.c);
    std::shared_ptr<const detail::Partial> p;
    detail::with_large_stack([&] { p = solver.solve(s, inst.lists, strat.fork()); });
    if (stats) *stats = solver.stats();
    auto sol = detail::finish(*p, opt.provenance_limit);
    if (sol.colors.size() != sol.chosen.size()) sol.colors.assign(sol.chosen.size(), 0);
    return sol;
}

// ---------------------------------------------------------------------------
// Slices and verification

/// Vertices with labels in I, as (kept input vertices, role bits per kept).
struct SliceMap {
    std::vector<Vertex> vertices;
    OrderedGraph graph;
};

inline SliceMap slice_vertices(const OrderedGraph& g, const Layering& labels, const Interval& iv) {
    SliceMap m;
    for (Vertex v = 0; v < g.n(); ++v)
        if (iv.contains(labels[v])) m.vertices.push_back(v);
    m.graph = g.induced(m.vertices);
    return m;
}

/// Slice for a cover of range r: demand limited to M_r(I), hit-sets limited
/// to M_2r(I) (only those marked in `assigned`).
inline std::pair<DomSetInstance, std::vector<Vertex>> slice_instance(const DomSetInstance& inst, const Layering& labels,
                                                                     const Interval& iv, Label r,
                                                                     const std::vector<char>& assigned = {}) {
    auto m = slice_vertices(inst.graph, labels, iv);
    DomSetInstance out;
    out.graph = m.graph;
    const Interval mr = margin(iv, r), core = margin(iv, 2 * r);
    for (Vertex v : m.vertices) out.demand.push_back(inst.demand[v] && mr.contains(labels[v]));
    for (std::size_t j = 0; j < inst.hits.size(); ++j) {
        if (j >= assigned.size() || !assigned[j]) continue;
        std::vector<Vertex> h;
        for (std::size_t i = 0; i < m.vertices.size(); ++i)
            if (std::binary_search(inst.hits[j].begin(), inst.hits[j].end(), m.vertices[i]) &&
                core.contains(labels[m.vertices[i]]))
                h.push_back(static_cast<Vertex>(i));
        out.hits.push_back(std::move(h));
    }
    return {std::move(out), std::move(m.vertices)};
}

/// Slice confining the solution to M_2r(I).
inline std::pair<ISInstance, std::vector<Vertex>> slice_instance(const ISInstance& inst, const Layering& labels,
                                                                 const Interval& iv, Label r) {
    auto m = slice_vertices(inst.graph, labels, iv);
    ISInstance out;
    out.graph = m.graph;
    const Interval core = margin(iv, 2 * r);
    for (Vertex v : m.vertices) out.forbidden.push_back(inst.forbidden[v] || !core.contains(labels[v]));
    return {std::move(out), std::move(m.vertices)};
}

/// Slice on the interior M_1(I).
inline std::pair<ColorInstance, std::vector<Vertex>> slice_instance(const ColorInstance& inst, const Layering& labels,
                                                                    const Interval& iv) {
    auto m = slice_vertices(inst.graph, labels, margin(iv, 1));
    ColorInstance out;
    out.graph = m.graph;
    out.c = inst.c;
    for (Vertex v : m.vertices) out.lists.push_back(inst.lists[v]);
    return {std::move(out), std::move(m.vertices)};
}

/// Empty string when `sol` is a valid solution of `inst`.
inline std::string check_solution(const DomSetInstance& inst, const Solution& sol) {
    if (!sol.feasible) return "infeasible";
    std::vector<char> in(static_cast<std::size_t>(inst.graph.n()), 0);
    for (Vertex v : sol.chosen) {
        if (v < 0 || v >= inst.graph.n()) return "vertex out of range";
        in[v] = 1;
    }
    for (Vertex v = 0; v < inst.graph.n(); ++v) {
        if (!inst.demand[v] || in[v]) continue;
        bool dom = false;
        for (Vertex w : inst.graph.neighbors(v)) dom = dom || in[w];
        if (!dom) return "vertex " + std::to_string(v) + " is not dominated";
    }
    for (std::size_t j = 0; j < inst.hits.size(); ++j) {
        bool hit = false;
        for (Vertex x : inst.hits[j]) hit = hit || (x >= 0 && x < inst.graph.n() && in[x]);
        if (!hit) return "hit-set " + std::to_string(j) + " is not hit";
    }
    return {};
}

inline std::string check_solution(const ISInstance& inst, const Solution& sol) {
    if (!sol.feasible) return "infeasible";
    std::vector<char> in(static_cast<std::size_t>(inst.graph.n()), 0);
    for (Vertex v : sol.chosen) {
        if (v < 0 || v >= inst.graph.n()) return "vertex out of range";
        if (inst.forbidden[v]) return "vertex " + std::to_string(v) + " is forbidden";
        if (in[v]) return "vertex " + std::to_string(v) + " chosen twice";
        in[v] = 1;
    }
    for (auto [u, v] : inst.graph.edges())
        if (in[u] && in[v]) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " inside the set";
    return {};
}

inline std::string check_solution(const ColorInstance& inst, const Solution& sol) {
    if (!sol.feasible) return "infeasible";
    if (sol.colors.size() != sol.chosen.size()) return "colour count mismatch";
    std::vector<int> col(static_cast<std::size_t>(inst.graph.n()), 0);
    for (std::size_t i = 0; i < sol.chosen.size(); ++i) {
        Vertex v = sol.chosen[i];
        int c = sol.colors[i];
        if (v < 0 || v >= inst.graph.n()) return "vertex out of range";
        if (col[v]) return "vertex " + std::to_string(v) + " chosen twice";
        if (c < 1 || c > inst.c || !(inst.lists[v] >> (c - 1) & 1))
            return "vertex " + std::to_string(v) + " coloured outside its list";
        col[v] = c;
    }
    for (auto [u, v] : inst.graph.edges())
        if (col[u] && col[u] == col[v]) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is monochromatic";
    return {};
}

template <class Instance>
bool verify_solution(const Instance& inst, const Solution& sol) {
    return check_solution(inst, sol).empty();
}

} // namespace baker
