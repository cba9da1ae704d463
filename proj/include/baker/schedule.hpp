#pragma once

// Saturating integer arithmetic and the accuracy schedules used by the
// approximation schemes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace baker {

/// Values at or above this are treated as "unbounded" by every bound
/// computation; arithmetic saturates here instead of overflowing.
inline constexpr std::int64_t kSaturated = std::int64_t{1} << 62;

/// Largest interval length a schedule hands out. Any longer interval behaves
/// identically on graphs of desk size, and the cap keeps cover counts finite.
inline constexpr std::int64_t kMaxIntervalLength = std::int64_t{1} << 40;

constexpr std::int64_t sat(std::int64_t x) { return x >= kSaturated ? kSaturated : x; }

constexpr std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kSaturated || b >= kSaturated) return kSaturated;
    return sat(a + b);
}

constexpr std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kSaturated || b >= kSaturated) return kSaturated;
    if (a > kSaturated / b) return kSaturated;
    return sat(a * b);
}

enum class Problem { DominatingSet, IndependentSet, ColorableSubgraph };

inline std::string to_string(Problem p) {
    switch (p) {
    case Problem::DominatingSet: return "domset";
    case Problem::IndependentSet: return "mis";
    case Problem::ColorableSubgraph: return "ccolorable";
    }
    return "?";
}

inline Problem parse_problem(const std::string& s) {
    if (s == "domset") return Problem::DominatingSet;
    if (s == "mis") return Problem::IndependentSet;
    if (s == "ccolorable") return Problem::ColorableSubgraph;
    throw std::invalid_argument("unknown problem '" + s + "'");
}

/// Per-round accuracy eps_i = 2^-i / (k+1) and interval lengths ell_i.
/// Summing eps_i gives 1/(k+1), which bounds both products
/// prod(1+eps_i) <= 1+1/k and prod(1-eps_i) >= 1-1/k.
class EpsSchedule {
  public:
    EpsSchedule(Problem problem, int k) : problem_(problem), k_(k) {
        if (k < 1) throw std::invalid_argument("k must be at least 1");
    }

    Problem problem() const { return problem_; }
    int k() const { return k_; }

    double eps(std::int64_t i) const { return std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(i, 4000))) / (k_ + 1); }

    /// Range of the locality argument: 1 for domination and independence, 0
    /// for the colouring covers.
    int range() const { return problem_ == Problem::ColorableSubgraph ? 0 : 1; }

    std::int64_t ell(std::int64_t i) const {
        if (i < 1) throw std::invalid_argument("schedule index must be positive");
        long double v = 0;
        const long double inv_eps = std::ldexp(static_cast<long double>(k_ + 1), static_cast<int>(std::min<std::int64_t>(i, 4000)));
        switch (problem_) {
        case Problem::DominatingSet: {
            long double spread = 6.0L * static_cast<long double>(i) * static_cast<long double>(i + 1);
            v = 1 + std::floor(2 * (1 + std::max(2 * inv_eps, spread)));
            break;
        }
        case Problem::IndependentSet: v = 1 + std::floor(2 * (1 + 2 * inv_eps)); break;
        case Problem::ColorableSubgraph: {
            long double lo = 2 * inv_eps;
            v = std::ceil(lo);
            if (std::fmod(v, 2.0L) != 0) v += 1;
            break;
        }
        }
        if (!(v < static_cast<long double>(kMaxIntervalLength))) return kMaxIntervalLength;
        return static_cast<std::int64_t>(v);
    }

  private:
    Problem problem_;
    int k_;
};

} // namespace baker
