#pragma once

// Layerings, geodesic checks and extension, ordered partitions and their
// quotients, chordal-ordering validation and distortion embeddings.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baker/graph.hpp"

namespace baker {

/// Raised when a partial layering is not geodesic; carries the pair that
/// violates d(x, y) >= |label(x) - label(y)|.
class GeodesicViolation : public GraphError {
  public:
    GeodesicViolation(Vertex x, Vertex y, std::string what) : GraphError(std::move(what)), x(x), y(y) {}
    Vertex x, y;
};

class DisconnectedGraph : public GraphError {
  public:
    DisconnectedGraph(Vertex a, Vertex b)
        : GraphError("graph is disconnected: " + std::to_string(a) + " cannot reach " + std::to_string(b)), a(a), b(b) {}
    Vertex a, b;
};

inline Layering bfs_layering(const OrderedGraph& g, Vertex root) {
    if (root < 0 || root >= g.n()) throw GraphError("bfs_layering: root out of range");
    auto dist = bfs_distances(g, root);
    Layering out(dist.size());
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] == kUnreachable) throw DisconnectedGraph(root, static_cast<Vertex>(v));
        out[v] = dist[v];
    }
    return out;
}

/// Component i (1-based, by smallest vertex) gets label spread * i.
inline Layering spread_componentwise_layering(const OrderedGraph& g, Label spread) {
    if (spread <= 0) throw GraphError("spread_componentwise_layering: spread must be positive");
    auto comp = connected_components(g);
    Layering out(comp.size());
    for (std::size_t v = 0; v < comp.size(); ++v) out[v] = spread * (comp[v] + 1);
    return out;
}

inline std::size_t layering_width(std::span<const Label> labels) {
    if (labels.empty()) return 0;
    std::vector<Label> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t best = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        best = std::max(best, j - i);
        i = j;
    }
    return best;
}

/// First edge violating the layering condition, if any.
inline std::optional<Edge> layering_violation(const OrderedGraph& g, std::span<const Label> labels) {
    if (static_cast<int>(labels.size()) != g.n()) throw GraphError("layering size does not match graph");
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v && (labels[u] - labels[v] > 1 || labels[v] - labels[u] > 1)) return Edge{u, v};
    return std::nullopt;
}

inline bool is_layering(const OrderedGraph& g, std::span<const Label> labels) {
    return !layering_violation(g, labels).has_value();
}

namespace detail {

struct MaxPlusResult {
    Layering value;               // max over sources x of label(x) - d(x, v)
    std::vector<Vertex> argmax;   // the source attaining it, -1 if unreachable
};

// Multi-source BFS computing value(v) = max_x (label(x) - d(x, v)). Sources are
// injected level by level in order of decreasing label, so the cost is
// O(n + m + |P| log |P|) regardless of the label range.
inline MaxPlusResult max_plus_spread(const OrderedGraph& g, std::span<const Vertex> sources,
                                     std::span<const Label> labels) {
    constexpr Label kNone = std::numeric_limits<Label>::min();
    MaxPlusResult r{Layering(static_cast<std::size_t>(g.n()), kNone), std::vector<Vertex>(static_cast<std::size_t>(g.n()), -1)};
    std::vector<std::size_t> order(sources.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return labels[a] != labels[b] ? labels[a] > labels[b] : sources[a] < sources[b];
    });
    std::vector<Vertex> frontier, next;
    std::size_t k = 0;
    Label level = order.empty() ? 0 : labels[order[0]];
    while (k < order.size() || !frontier.empty()) {
        if (frontier.empty()) level = labels[order[k]];
        while (k < order.size() && labels[order[k]] == level) {
            Vertex x = sources[order[k]];
            if (r.value[x] == kNone) {
                r.value[x] = level;
                r.argmax[x] = x;
                frontier.push_back(x);
            }
            ++k;
        }
        next.clear();
        for (Vertex u : frontier)
            for (Vertex w : g.neighbors(u))
                if (r.value[w] == kNone) {
                    r.value[w] = level - 1;
                    r.argmax[w] = r.argmax[u];
                    next.push_back(w);
                }
        frontier.swap(next);
        --level;
    }
    return r;
}

inline void require_partial_layering(const OrderedGraph& g, std::span<const Vertex> part, std::span<const Label> labels) {
    if (part.size() != labels.size()) throw GraphError("partial layering size does not match vertex set");
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < part.size(); ++i) {
        if (part[i] < 0 || part[i] >= g.n()) throw GraphError("vertex set exceeds graph");
        if (pos[part[i]] >= 0) throw GraphError("vertex set has duplicates");
        pos[part[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < part.size(); ++i)
        for (Vertex w : g.neighbors(part[i])) {
            int j = pos[w];
            if (j >= 0 && std::abs(labels[i] - labels[j]) > 1)
                throw GraphError("not a layering of the induced subgraph: edge " + std::to_string(part[i]) + "-" +
                                 std::to_string(w));
        }
}

} // namespace detail

/// True iff d_G(x, y) >= |label(x) - label(y)| for all x, y in `part`
/// (pairs in different components impose nothing). `labels` is parallel to
/// `part` and must be a layering of G[part].
inline bool is_geodesic(const OrderedGraph& g, std::span<const Vertex> part, std::span<const Label> labels) {
    detail::require_partial_layering(g, part, labels);
    auto r = detail::max_plus_spread(g, part, labels);
    for (std::size_t i = 0; i < part.size(); ++i)
        if (r.value[part[i]] != labels[i]) return false;
    return true;
}

/// Extends a G-geodesic layering of G[part] to a geodesic layering of G by
/// label(v) = max over x in part of label(x) - d(x, v). Vertices in
/// components avoiding `part` get label 0. Throws GeodesicViolation when the
/// partial layering is not geodesic.
inline Layering extend_geodesic_layering(const OrderedGraph& g, std::span<const Vertex> part,
                                         std::span<const Label> labels) {
    detail::require_partial_layering(g, part, labels);
    auto r = detail::max_plus_spread(g, part, labels);
    for (std::size_t i = 0; i < part.size(); ++i) {
        Vertex x = part[i];
        if (r.value[x] != labels[i]) {
            Vertex y = r.argmax[x];
            throw GeodesicViolation(y, x,
                                    "layering is not geodesic: vertices " + std::to_string(y) + " and " +
                                        std::to_string(x) + " are closer than their label gap");
        }
    }
    for (auto& v : r.value)
        if (v == std::numeric_limits<Label>::min()) v = 0;
    return std::move(r.value);
}

namespace detail {

inline void require_ordered_cover(int n, const std::vector<std::vector<Vertex>>& parts) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::size_t total = 0;
    Vertex prev_max = -1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        if (p.empty()) throw GraphError("partition has an empty part");
        for (Vertex v : p) {
            if (v < 0 || v >= n) throw GraphError("partition vertex out of range");
            if (seen[v]) throw GraphError("partition parts overlap at vertex " + std::to_string(v));
            seen[v] = 1;
        }
        auto [lo, hi] = std::minmax_element(p.begin(), p.end());
        if (*lo <= prev_max)
            throw GraphError("partition does not respect the vertex order at part " + std::to_string(i));
        prev_max = *hi;
        total += p.size();
    }
    if (static_cast<int>(total) != n) throw GraphError("partition does not cover the vertex set");
}

} // namespace detail

/// Contracts each part to a vertex; parts keep their sequence order.
inline OrderedGraph quotient(const OrderedGraph& g, const std::vector<std::vector<Vertex>>& parts) {
    detail::require_ordered_cover(g.n(), parts);
    std::vector<int> part_of(static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        int a = part_of[u], b = part_of[v];
        if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return OrderedGraph::from_edges(static_cast<int>(parts.size()), edges);
}

struct ChordalCheck {
    bool chordal = true;
    int max_left_degree = 0;
    Vertex witness = -1; // a vertex whose smaller neighbours are not a clique
};

inline ChordalCheck check_chordal_ordering(const OrderedGraph& g) {
    ChordalCheck out;
    for (Vertex v = 0; v < g.n(); ++v) {
        auto nb = g.neighbors(v);
        auto end = std::lower_bound(nb.begin(), nb.end(), v);
        int left = static_cast<int>(end - nb.begin());
        out.max_left_degree = std::max(out.max_left_degree, left);
        if (!out.chordal) continue;
        for (auto a = nb.begin(); a != end && out.chordal; ++a)
            for (auto b = a + 1; b != end; ++b)
                if (!g.adjacent(*a, *b)) {
                    out.chordal = false;
                    out.witness = v;
                    break;
                }
    }
    return out;
}

/// Ordered parts P_1..P_m, a layering per part (parallel to the part's
/// vertex list) and the quotient graph.
struct GeodesicPartition {
    std::vector<std::vector<Vertex>> parts;
    std::vector<std::vector<Label>> part_layerings;
    OrderedGraph quotient;
};

struct PartitionCheck {
    bool ok = true;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

/// Each part's layering must be geodesic in G[P_i u ... u P_m] with width at
/// most d, and the stored quotient must equal quotient(G, parts).
inline PartitionCheck check_geodesic_partition(const OrderedGraph& g, const GeodesicPartition& gp, int d) {
    auto fail = [](std::string why) { return PartitionCheck{false, std::move(why)}; };
    try {
        detail::require_ordered_cover(g.n(), gp.parts);
    } catch (const GraphError& e) {
        return fail(e.what());
    }
    if (gp.part_layerings.size() != gp.parts.size()) return fail("one layering per part required");
    for (std::size_t i = 0; i < gp.parts.size(); ++i) {
        const auto& part = gp.parts[i];
        const auto& lab = gp.part_layerings[i];
        if (lab.size() != part.size()) return fail("part " + std::to_string(i) + ": layering size mismatch");
        if (static_cast<int>(layering_width(lab)) > d)
            return fail("part " + std::to_string(i) + ": width exceeds " + std::to_string(d));
        // Parts respect the order, so the suffix graph is the set of vertices
        // from the part's minimum onward.
        Vertex lo = *std::min_element(part.begin(), part.end());
        std::vector<Vertex> suffix(static_cast<std::size_t>(g.n() - lo));
        std::iota(suffix.begin(), suffix.end(), lo);
        auto sub = g.induced(suffix);
        std::vector<Vertex> local(part.size());
        for (std::size_t j = 0; j < part.size(); ++j) local[j] = part[j] - lo;
        try {
            if (!is_geodesic(sub, local, lab))
                return fail("part " + std::to_string(i) + ": layering is not geodesic in its suffix graph");
        } catch (const GraphError& e) {
            return fail("part " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!(quotient(g, gp.parts) == gp.quotient)) return fail("stored quotient differs from the contraction");
    return {};
}

/// Placement in R^dim with pairwise l-infinity distance >= 1 and edge
/// lengths <= beta.
struct Embedding {
    int dim = 1;
    std::vector<std::vector<double>> coords;
    double beta = 1.0;
};

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline void validate_embedding(const OrderedGraph& g, const Embedding& e) {
    if (e.dim < 1) throw GraphError("embedding dimension must be positive");
    if (e.beta < 1.0) throw GraphError("distortion must be at least 1");
    if (static_cast<int>(e.coords.size()) != g.n()) throw GraphError("embedding does not cover the vertex set");
    for (const auto& c : e.coords)
        if (static_cast<int>(c.size()) != e.dim) throw GraphError("embedding coordinate has the wrong dimension");
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (linf(e.coords[u], e.coords[v]) < 1.0)
                throw GraphError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are closer than 1");
    for (auto [u, v] : g.edges())
        if (linf(e.coords[u], e.coords[v]) > e.beta)
            throw GraphError("edge " + std::to_string(u) + "-" + std::to_string(v) + " is longer than beta");
}

} // namespace baker
