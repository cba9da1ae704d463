#pragma once

// Game states, Destroyer actions and the canonical Preserver replies.

#include <algorithm>
#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "baker/graph.hpp"
#include "baker/layering.hpp"
#include "baker/rseq.hpp"

namespace baker {

/// A state (G, r) of the game. G is always an induced subgraph of a fixed
/// host graph: `alive` lists host identifiers in increasing order and
/// `graph` is the compact copy in which alive[i] is vertex i, so the host
/// order is inherited.
struct GameState {
    std::shared_ptr<const OrderedGraph> host;
    std::vector<Vertex> alive;
    OrderedGraph graph;
    RSequence rseq;
    std::int64_t round = 0;

    static GameState make(std::shared_ptr<const OrderedGraph> host, std::vector<Vertex> alive, RSequence rseq,
                          std::int64_t round = 0) {
        GameState s;
        s.graph = host->induced_sparse(alive);
        s.host = std::move(host);
        s.alive = std::move(alive);
        s.rseq = std::move(rseq);
        s.round = round;
        return s;
    }

    static GameState initial(std::shared_ptr<const OrderedGraph> host, RSequence rseq) {
        std::vector<Vertex> all(static_cast<std::size_t>(host->n()));
        std::iota(all.begin(), all.end(), 0);
        return make(std::move(host), std::move(all), std::move(rseq));
    }

    static GameState initial(OrderedGraph g, RSequence rseq) {
        return initial(std::make_shared<const OrderedGraph>(std::move(g)), std::move(rseq));
    }

    bool over() const { return alive.empty(); }
    int size() const { return static_cast<int>(alive.size()); }

    /// Position of a host vertex in `alive`, or -1.
    int local(Vertex host_id) const {
        auto it = std::lower_bound(alive.begin(), alive.end(), host_id);
        return (it != alive.end() && *it == host_id) ? static_cast<int>(it - alive.begin()) : -1;
    }

    /// Same host, vertex subset given by local positions (sorted).
    GameState restricted(const std::vector<int>& keep_local, RSequence next, std::int64_t next_round) const {
        std::vector<Vertex> ids;
        ids.reserve(keep_local.size());
        for (int p : keep_local) ids.push_back(alive[p]);
        GameState s;
        s.graph = graph.induced_sparse(keep_local);
        s.host = host;
        s.alive = std::move(ids);
        s.rseq = std::move(next);
        s.round = next_round;
        return s;
    }
};

/// A closed integer interval [lo, hi].
struct Interval {
    Label lo = 0, hi = -1;
    Label length() const { return hi < lo ? 0 : hi - lo + 1; }
    bool contains(Label x) const { return lo <= x && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& i) { return "[" + std::to_string(i.lo) + "," + std::to_string(i.hi) + "]"; }

struct Action {
    enum class Kind { Delete, Restrict };
    Kind kind = Kind::Delete;
    /// Labels parallel to the state's `alive` list (Restrict only).
    Layering layering;
    /// Labels of elements a strategy tracks internally but that are absent
    /// from the real graph. Replies that treat these differently may lead the
    /// strategy to different memory, so exhaustive search distinguishes them.
    std::vector<Label> shadow;

    static Action remove() { return {}; }
    static Action restrict(Layering l, std::vector<Label> shadow = {}) {
        return Action{Kind::Restrict, std::move(l), std::move(shadow)};
    }
    bool is_delete() const { return kind == Kind::Delete; }
};

class GameOver : public std::logic_error {
  public:
    GameOver() : std::logic_error("game is already over") {}
};

class IllegalMove : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Removes the order-minimum vertex and consumes one sequence element.
inline GameState apply_delete(const GameState& s) {
    if (s.over()) throw GameOver();
    std::vector<int> keep(static_cast<std::size_t>(s.size() - 1));
    std::iota(keep.begin(), keep.end(), 1);
    return s.restricted(keep, s.rseq.tail(), s.round + 1);
}

inline void check_restrict(const GameState& s, const Layering& labels) {
    if (static_cast<int>(labels.size()) != s.size()) throw IllegalMove("layering does not match the current graph");
    if (auto e = layering_violation(s.graph, labels))
        throw IllegalMove("invalid layering on edge " + std::to_string(s.alive[e->first]) + "-" +
                          std::to_string(s.alive[e->second]));
}

/// Keeps the vertices whose label lies in `reply`.
inline GameState apply_restrict(const GameState& s, const Layering& labels, const Interval& reply) {
    if (s.over()) throw GameOver();
    check_restrict(s, labels);
    if (reply.length() > s.rseq.head())
        throw IllegalMove("reply " + to_string(reply) + " is longer than head " + std::to_string(s.rseq.head()));
    std::vector<int> keep;
    for (int i = 0; i < s.size(); ++i)
        if (reply.contains(labels[i])) keep.push_back(i);
    return s.restricted(keep, s.rseq.tail(), s.round + 1);
}

inline GameState apply(const GameState& s, const Action& a, const std::optional<Interval>& reply) {
    if (a.is_delete()) return apply_delete(s);
    if (!reply) throw IllegalMove("restrict needs a reply");
    return apply_restrict(s, a.layering, *reply);
}

/// Canonical replies: intervals of exactly head(r) integers starting in
/// [min - head + 1, max], one per distinct outcome. The outcome of a reply is
/// the set of kept vertices together with the set of shadow labels it covers;
/// with no shadow labels this is deduplication by vertex set.
inline std::vector<Interval> legal_replies(const GameState& s, const Layering& labels,
                                           const std::vector<Label>& shadow = {}) {
    check_restrict(s, labels);
    if (labels.empty()) return {};
    const Label h = s.rseq.head();
    std::vector<Label> points(labels.begin(), labels.end());
    points.insert(points.end(), shadow.begin(), shadow.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    auto [mn, mx] = std::minmax_element(labels.begin(), labels.end());
    const Label first = *mn - h + 1, last = *mx;
    // The covered point set only changes where a point enters (start = x-h+1)
    // or leaves (start = x+1) the window.
    std::vector<Label> starts{first};
    for (Label x : points) {
        for (Label st : {x - h + 1, x + 1})
            if (st >= first && st <= last) starts.push_back(st);
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

    std::vector<Interval> out;
    std::set<std::pair<std::vector<int>, std::vector<Label>>> seen;
    for (Label st : starts) {
        Interval iv{st, st + h - 1};
        std::vector<int> kept;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            if (iv.contains(labels[i])) kept.push_back(i);
        std::vector<Label> covered;
        for (Label x : shadow)
            if (iv.contains(x)) covered.push_back(x);
        std::sort(covered.begin(), covered.end());
        covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
        if (seen.emplace(std::move(kept), std::move(covered)).second) out.push_back(iv);
    }
    return out;
}

} // namespace baker
