#pragma once

// Graph families used by tests, benchmarks and the command line.

#include <random>
#include <utility>
#include <vector>

#include "baker/graph.hpp"
#include "baker/layering.hpp"

namespace baker {

namespace detail {
inline void require_positive(long long x, const char* what) {
    if (x <= 0) throw GraphError(std::string(what) + " must be positive");
}
} // namespace detail

inline OrderedGraph gen_path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return OrderedGraph::from_edges(n, e);
}

inline OrderedGraph gen_cycle(int n) {
    if (n < 3) throw GraphError("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return OrderedGraph::from_edges(n, e);
}

inline OrderedGraph gen_complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return OrderedGraph::from_edges(n, e);
}

/// Center 0, leaves 1..leaves.
inline OrderedGraph gen_star(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return OrderedGraph::from_edges(leaves + 1, e);
}

/// Row-major: (r, c) is vertex r * cols + c.
inline OrderedGraph gen_grid(int rows, int cols) {
    detail::require_positive(rows, "grid rows");
    detail::require_positive(cols, "grid columns");
    std::vector<Edge> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    return OrderedGraph::from_edges(rows * cols, e);
}

/// n x n grid plus a universal vertex, which comes first (vertex 0).
inline OrderedGraph gen_apex_grid(int n) {
    detail::require_positive(n, "apex grid size");
    auto grid = gen_grid(n, n);
    std::vector<Edge> e;
    for (auto [u, v] : grid.edges()) e.emplace_back(u + 1, v + 1);
    for (int v = 1; v <= n * n; ++v) e.emplace_back(0, v);
    return OrderedGraph::from_edges(n * n + 1, e);
}

/// n x n x n grid with all diagonals of the unit subcubes (the king graph),
/// with its distortion-1 embedding at the integer points.
inline std::pair<OrderedGraph, Embedding> gen_diag_grid(int n) {
    detail::require_positive(n, "diagonal grid size");
    auto id = [n](int x, int y, int z) { return (x * n + y) * n + z; };
    std::vector<Edge> e;
    Embedding emb;
    emb.dim = 3;
    emb.beta = 1.0;
    emb.coords.resize(static_cast<std::size_t>(n) * n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                emb.coords[id(x, y, z)] = {double(x), double(y), double(z)};
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dz = -1; dz <= 1; ++dz) {
                            int a = x + dx, b = y + dy, c = z + dz;
                            if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) continue;
                            if (id(a, b, c) > id(x, y, z)) e.emplace_back(id(x, y, z), id(a, b, c));
                        }
            }
    return {OrderedGraph::from_edges(n * n * n, e), std::move(emb)};
}

/// Random d-tree on n vertices in construction order: a (d+1)-clique, then
/// each vertex joins a random d-clique. The order is chordal with left-degree
/// at most d.
inline OrderedGraph gen_ktree(int n, int d, std::uint64_t seed) {
    detail::require_positive(n, "k-tree size");
    if (d < 0) throw GraphError("k-tree width must be non-negative");
    std::mt19937_64 rng(seed);
    std::vector<Edge> e;
    const int base = std::min(n, d + 1);
    for (int i = 0; i < base; ++i)
        for (int j = i + 1; j < base; ++j) e.emplace_back(i, j);
    std::vector<std::vector<Vertex>> cliques; // (d+1)-cliques
    if (base == d + 1) {
        std::vector<Vertex> c(static_cast<std::size_t>(base));
        std::iota(c.begin(), c.end(), 0);
        cliques.push_back(std::move(c));
    }
    for (Vertex v = base; v < n; ++v) {
        std::vector<Vertex> host = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
        if (d > 0) host.erase(host.begin() + static_cast<long>(std::uniform_int_distribution<int>(0, d)(rng)));
        else host.clear();
        for (Vertex u : host) e.emplace_back(u, v);
        host.push_back(v);
        cliques.push_back(std::move(host));
    }
    return OrderedGraph::from_edges(n, e);
}

/// Erdos-Renyi G(n, p).
inline OrderedGraph gen_random(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(i, j);
    return OrderedGraph::from_edges(n, e);
}

} // namespace baker
