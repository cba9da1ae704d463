#pragma once

// Strategy descriptors and the round counts their strategies guarantee.

#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "baker/rseq.hpp"

namespace baker {

/// Composition tree describing a strategy. `LayerNest{d, K}` is the K-fold
/// nested clique-sum of chordal left-degree-d graphs the chordal strategy
/// plays after its BFS restriction.
struct StrategySpec {
    enum class Kind { Edgeless, Chordal, LayerNest, CliqueSum, Quotient, Distortion };
    Kind kind = Kind::Edgeless;
    int d = 0;                         // Chordal, LayerNest, Quotient
    std::int64_t layers = 1;           // LayerNest
    int dim = 1;                       // Distortion
    double beta = 1.0;                 // Distortion
    std::vector<StrategySpec> children; // CliqueSum: {base, leaf}; Quotient: {inner}

    static StrategySpec edgeless() { return {}; }
    static StrategySpec chordal(int d) { return {Kind::Chordal, d, 1, 1, 1.0, {}}; }
    static StrategySpec layer_nest(int d, std::int64_t k) { return {Kind::LayerNest, d, k, 1, 1.0, {}}; }
    static StrategySpec clique_sum(StrategySpec base, StrategySpec leaf) {
        return {Kind::CliqueSum, 0, 1, 1, 1.0, {std::move(base), std::move(leaf)}};
    }
    static StrategySpec quotient(StrategySpec inner, int d) { return {Kind::Quotient, d, 1, 1, 1.0, {std::move(inner)}}; }
    static StrategySpec distortion(int dim, double beta) { return {Kind::Distortion, 0, 1, dim, beta, {}}; }
    static StrategySpec minor_free(int k) { return quotient(chordal(k - 2), k - 2); }

    std::string describe() const {
        switch (kind) {
        case Kind::Edgeless: return "edgeless";
        case Kind::Chordal: return "chordal:" + std::to_string(d);
        case Kind::LayerNest: return "nest:" + std::to_string(d) + "," + std::to_string(layers);
        case Kind::CliqueSum: return "cliquesum(" + children[0].describe() + "," + children[1].describe() + ")";
        case Kind::Quotient: return "quotient(" + children[0].describe() + "," + std::to_string(d) + ")";
        case Kind::Distortion: return "distortion:" + std::to_string(dim);
        }
        return "?";
    }
};

/// i_m of the recurrence i_0 = 0, i_j = i_{j-1} + d r_{i_{j-1}+1} + 1.
inline std::int64_t quotient_phase_start(const RSequence& r, std::int64_t d, std::int64_t m) {
    constexpr std::int64_t kIterationCap = 10'000'000;
    if (m >= kIterationCap) return kSaturated;
    std::int64_t i = 0;
    for (std::int64_t j = 0; j < m && i < kSaturated; ++j) i = sat_add(sat_add(i, sat_mul(d, r.at(sat_add(i, 1)))), 1);
    return i;
}

/// Worst-case number of rounds the described strategy needs on any graph of
/// its class, for the sequence r. Saturates at kSaturated.
inline std::int64_t round_bound(const StrategySpec& s, const RSequence& r) {
    using K = StrategySpec::Kind;
    switch (s.kind) {
    case K::Edgeless: return 2;
    case K::Chordal:
        if (s.d < 0) throw std::invalid_argument("chordal strategy needs d >= 0");
        if (s.d == 0) return 2;
        return sat_add(2, round_bound(StrategySpec::layer_nest(s.d - 1, r.at(2)), r.tail(2)));
    case K::LayerNest: {
        if (s.layers < 1) throw std::invalid_argument("layer nest needs at least one layer");
        if (s.layers == 1) return round_bound(StrategySpec::chordal(s.d), r);
        // Every level at least doubles the bound of the previous one.
        if (s.layers >= 63) return kSaturated;
        return round_bound(StrategySpec::clique_sum(StrategySpec::layer_nest(s.d, s.layers - 1), StrategySpec::chordal(s.d)),
                           r);
    }
    case K::CliqueSum: {
        if (s.children.size() != 2) throw std::invalid_argument("clique-sum needs two children");
        std::int64_t t1 = round_bound(s.children[0], r.every_second());
        if (t1 >= kSaturated) return kSaturated;
        std::int64_t t2 = round_bound(s.children[1], r.tail(sat_add(sat_mul(2, t1), 1)));
        return sat_add(sat_add(sat_mul(2, t1), t2), 1);
    }
    case K::Quotient: {
        if (s.children.size() != 1) throw std::invalid_argument("quotient needs one child");
        if (s.d < 1) throw std::invalid_argument("quotient needs d >= 1");
        std::int64_t m = round_bound(s.children[0], r.quotient_thinned(s.d));
        return quotient_phase_start(r, s.d, m);
    }
    case K::Distortion: {
        long double prod = 1;
        for (int i = 1; i <= s.dim; ++i) {
            prod *= static_cast<long double>(s.beta) * static_cast<long double>(r.at(i)) + 1;
            if (prod >= static_cast<long double>(kSaturated)) return kSaturated;
        }
        return sat_add(s.dim, static_cast<std::int64_t>(std::floor(prod)));
    }
    }
    throw std::invalid_argument("unknown strategy descriptor");
}

} // namespace baker
