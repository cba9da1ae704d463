#pragma once

// (ell, r)-covers of the integers, margins, and the plan dynamic program.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "baker/graph.hpp"
#include "baker/state.hpp"

namespace baker {

/// Floor division and non-negative remainder.
inline Label floor_div(Label a, Label b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
inline Label floor_mod(Label a, Label b) { return a - floor_div(a, b) * b; }

/// Intervals {i, ..., i+ell-1} for every i congruent to `residue` modulo
/// ell - 2r. Consecutive intervals overlap in 2r integers.
struct Cover {
    Label ell = 1, r = 0, residue = 0;

    Label period() const { return ell - 2 * r; }
    Interval at(Label start) const { return {start, start + ell - 1}; }

    /// Largest interval start that is <= x.
    Label start_at_or_before(Label x) const { return x - floor_mod(x - residue, period()); }

    /// Intervals containing x, in increasing order.
    std::vector<Interval> containing(Label x) const {
        std::vector<Interval> out;
        for (Label s = start_at_or_before(x); s + ell - 1 >= x; s -= period()) out.push_back(at(s));
        std::reverse(out.begin(), out.end());
        return out;
    }

    /// The unique interval whose mid-margin M_r contains x.
    Interval owner(Label x) const { return at(start_at_or_before(x - r)); }
};

inline Cover make_cover(Label ell, Label r, Label residue) {
    if (r < 0) throw std::invalid_argument("cover range must be non-negative");
    if (ell <= 2 * r) throw std::invalid_argument("cover needs ell > 2r");
    if (residue < 0 || residue >= ell - 2 * r) throw std::invalid_argument("cover residue out of range");
    return {ell, r, residue};
}

inline std::vector<Cover> all_covers(Label ell, Label r) {
    if (r < 0 || ell <= 2 * r) throw std::invalid_argument("cover needs ell > 2r >= 0");
    if (ell - 2 * r > (Label{1} << 26)) throw std::invalid_argument("too many covers to list");
    std::vector<Cover> out;
    for (Label i = 0; i < ell - 2 * r; ++i) out.push_back({ell, r, i});
    return out;
}

/// {lo+d, ..., hi-d}; empty (length 0) when 2d >= |I|.
inline Interval margin(const Interval& i, Label d) {
    if (i.length() <= 2 * d) return {i.lo + d, i.lo + d - 1};
    return {i.lo + d, i.hi - d};
}

/// Intervals of the cover that contain at least one label, in increasing order.
inline std::vector<Interval> occupied_intervals(const Cover& c, const Layering& labels) {
    std::vector<Label> xs(labels.begin(), labels.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::set<Label> starts;
    for (Label x : xs)
        for (const auto& iv : c.containing(x)) starts.insert(iv.lo);
    std::vector<Interval> out;
    for (Label s : starts) out.push_back(c.at(s));
    return out;
}

/// Checks over [lo, hi] that every integer lies in exactly one mid-margin.
inline bool mid_margins_partition(const Cover& c, Label lo, Label hi) {
    for (Label x = lo; x <= hi; ++x) {
        int owners = 0;
        for (const auto& iv : c.containing(x)) owners += margin(iv, c.r).contains(x);
        if (owners != 1) return false;
    }
    return true;
}

/// Smallest label gap between the 2r-margins of two distinct intervals of
/// the cover (the intervals starting at `start` and the next one).
inline Label core_gap(const Cover& c, Label start) {
    Interval a = margin(c.at(start), 2 * c.r), b = margin(c.at(start + c.period()), 2 * c.r);
    if (a.length() == 0 || b.length() == 0) return c.period() + 2 * c.r + 1;
    return b.lo - a.hi;
}

// ---------------------------------------------------------------------------
// Plans

using Cost = std::int64_t;

/// Count tuples q with 0 <= q <= m componentwise, indexed in lexicographic order.
class TupleSpace {
  public:
    explicit TupleSpace(std::vector<int> m) : m_(std::move(m)) {
        size_ = 1;
        for (int x : m_) {
            if (x < 0) throw std::invalid_argument("negative plan total");
            size_ *= static_cast<std::size_t>(x) + 1;
            if (size_ > (std::size_t{1} << 22)) throw std::invalid_argument("plan tuple space too large");
        }
    }
    std::size_t size() const { return size_; }
    const std::vector<int>& bounds() const { return m_; }

    std::vector<int> decode(std::size_t idx) const {
        std::vector<int> q(m_.size());
        for (std::size_t i = m_.size(); i-- > 0;) {
            q[i] = static_cast<int>(idx % (m_[i] + 1));
            idx /= m_[i] + 1;
        }
        return q;
    }
    std::size_t encode(const std::vector<int>& q) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m_.size(); ++i) idx = idx * (m_[i] + 1) + q[i];
        return idx;
    }
    std::size_t full() const { return encode(m_); }

  private:
    std::vector<int> m_;
    std::size_t size_ = 1;
};

enum class PlanMode { Min, Max };

/// Per occupied interval, the count tuple it is assigned.
struct PlanTuple {
    std::vector<std::vector<int>> counts;
    Cost total = 0;
};

/// costs[j][q]: cost of interval j when assigned tuple q (TupleSpace index),
/// or nothing when infeasible. Returns the optimal way to split m across the
/// intervals, or nothing when every split hits an infeasible entry. Among
/// optimal splits the lexicographically smallest one wins.
inline std::optional<PlanTuple> plan_dp(const std::vector<std::vector<std::optional<Cost>>>& costs,
                                        const std::vector<int>& m, PlanMode mode) {
    TupleSpace space(m);
    const std::size_t T = space.size(), a = costs.size();
    for (const auto& row : costs)
        if (row.size() != T) throw std::invalid_argument("cost table does not match the tuple space");
    std::vector<std::vector<int>> dec(T);
    for (std::size_t q = 0; q < T; ++q) dec[q] = space.decode(q);
    // sub[res] lists (l, res - l) for every l <= res.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sub(T);
    for (std::size_t res = 0; res < T; ++res)
        for (std::size_t l = 0; l < T; ++l) {
            bool ok = true;
            std::vector<int> rest(m.size());
            for (std::size_t i = 0; i < m.size() && ok; ++i) {
                rest[i] = dec[res][i] - dec[l][i];
                ok = rest[i] >= 0;
            }
            if (ok) sub[res].emplace_back(l, space.encode(rest));
        }
    auto better = [mode](Cost x, Cost y) { return mode == PlanMode::Min ? x < y : x > y; };

    // f[j][res]: best total for intervals j.. using exactly res.
    std::vector<std::vector<std::optional<Cost>>> f(a + 1, std::vector<std::optional<Cost>>(T));
    f[a][0] = 0;
    for (std::size_t j = a; j-- > 0;)
        for (std::size_t res = 0; res < T; ++res)
            for (auto [l, rest] : sub[res]) {
                if (!costs[j][l] || !f[j + 1][rest]) continue;
                Cost v = *costs[j][l] + *f[j + 1][rest];
                if (!f[j][res] || better(v, *f[j][res])) f[j][res] = v;
            }
    const std::size_t target = space.full();
    if (!f[0][target]) return std::nullopt;
    PlanTuple out;
    out.total = *f[0][target];
    std::size_t res = target;
    for (std::size_t j = 0; j < a; ++j) {
        for (auto [l, rest] : sub[res]) { // l increases lexicographically
            if (!costs[j][l] || !f[j + 1][rest]) continue;
            if (*costs[j][l] + *f[j + 1][rest] == *f[j][res]) {
                out.counts.push_back(dec[l]);
                res = rest;
                break;
            }
        }
    }
    return out;
}

} // namespace baker
