#pragma once

// Vertical-path decomposition of graphs without a K_k minor into a width
// (k-2) geodesic partition whose quotient is chordal with left-degree at most
// k-2, plus the strategy built on top of it.

#include <deque>
#include <memory>
#include <variant>
#include <vector>

#include "baker/graph.hpp"
#include "baker/layering.hpp"
#include "baker/strategy.hpp"

namespace baker {

/// k connected, pairwise disjoint and pairwise adjacent vertex sets.
struct MinorWitness {
    std::vector<std::vector<Vertex>> branch_sets;

    /// Empty string when the witness certifies a K_k minor of g.
    std::string verify(const OrderedGraph& g) const {
        std::vector<int> owner(static_cast<std::size_t>(g.n()), -1);
        for (std::size_t i = 0; i < branch_sets.size(); ++i) {
            const auto& b = branch_sets[i];
            if (b.empty()) return "branch set " + std::to_string(i) + " is empty";
            for (Vertex v : b) {
                if (v < 0 || v >= g.n()) return "vertex out of range";
                if (owner[v] >= 0) return "branch sets overlap at " + std::to_string(v);
                owner[v] = static_cast<int>(i);
            }
            std::vector<Vertex> sorted(b);
            std::sort(sorted.begin(), sorted.end());
            int count = 0;
            connected_components(g.induced(sorted), &count);
            if (count != 1) return "branch set " + std::to_string(i) + " is not connected";
        }
        const std::size_t k = branch_sets.size();
        std::vector<std::vector<char>> touch(k, std::vector<char>(k, 0));
        for (auto [u, v] : g.edges()) {
            int a = owner[u], b = owner[v];
            if (a >= 0 && b >= 0 && a != b) touch[a][b] = touch[b][a] = 1;
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (!touch[i][j])
                    return "branch sets " + std::to_string(i) + " and " + std::to_string(j) + " are not adjacent";
        return {};
    }
};

/// `order[i]` is the input vertex that becomes vertex i of `graph`;
/// `partition` refers to the new identifiers.
struct OrderedPartition {
    std::vector<Vertex> order;
    OrderedGraph graph;
    GeodesicPartition partition;
};

using DecompositionResult = std::variant<OrderedPartition, MinorWitness>;

inline DecompositionResult chordal_geodesic_partition(const OrderedGraph& g, int k) {
    if (k < 3) throw std::invalid_argument("decomposition needs k >= 3");
    const int n = g.n();
    struct Task {
        std::vector<Vertex> comp; // sorted
        std::vector<int> touching; // indices of earlier parts, in creation order
    };
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Vertex>> parts;   // input ids, sorted by (depth, id)
    std::vector<std::vector<Label>> layers;  // BFS depth per part vertex
    std::deque<Task> queue;

    // Components of g restricted to `allowed` (marked by stamp), as sorted lists.
    std::vector<int> mark(static_cast<std::size_t>(n), -1);
    int stamp = 0;
    auto components_of = [&](const std::vector<Vertex>& vs) {
        ++stamp;
        for (Vertex v : vs) mark[v] = stamp;
        std::vector<std::vector<Vertex>> out;
        for (Vertex s : vs) {
            if (mark[s] != stamp) continue;
            std::vector<Vertex> comp{s};
            mark[s] = -stamp;
            for (std::size_t h = 0; h < comp.size(); ++h)
                for (Vertex w : g.neighbors(comp[h]))
                    if (mark[w] == stamp) {
                        mark[w] = -stamp;
                        comp.push_back(w);
                    }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        return out;
    };

    {
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        for (auto& c : components_of(all)) queue.push_back({std::move(c), {}});
    }

    std::vector<int> depth(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
    while (!queue.empty()) {
        Task task = std::move(queue.front());
        queue.pop_front();
        const auto& c = task.comp;
        ++stamp;
        for (Vertex v : c) mark[v] = stamp;

        Vertex root = c.front();
        if (!task.touching.empty()) {
            const int recent = task.touching.back();
            root = -1;
            for (Vertex v : c) {
                for (Vertex w : g.neighbors(v))
                    if (part_of[w] == recent) {
                        root = v;
                        break;
                    }
                if (root >= 0) break;
            }
        }
        // BFS tree of C; neighbours are scanned in increasing order, so the
        // parent is the first discoverer.
        std::vector<Vertex> bfs{root};
        depth[root] = 0;
        parent[root] = -1;
        mark[root] = -stamp;
        for (std::size_t h = 0; h < bfs.size(); ++h)
            for (Vertex w : g.neighbors(bfs[h]))
                if (mark[w] == stamp) {
                    mark[w] = -stamp;
                    depth[w] = depth[bfs[h]] + 1;
                    parent[w] = bfs[h];
                    bfs.push_back(w);
                }

        std::vector<Vertex> piece{root};
        const int new_part = static_cast<int>(parts.size());
        part_of[root] = new_part;
        for (int q : task.touching) {
            Vertex best = -1;
            for (Vertex v : c) {
                bool adj = false;
                for (Vertex w : g.neighbors(v))
                    if (part_of[w] == q) {
                        adj = true;
                        break;
                    }
                if (adj && (best < 0 || depth[v] < depth[best] || (depth[v] == depth[best] && v < best))) best = v;
            }
            for (Vertex x = best; x >= 0 && part_of[x] != new_part; x = parent[x]) {
                part_of[x] = new_part;
                piece.push_back(x);
            }
        }
        std::sort(piece.begin(), piece.end(), [&](Vertex a, Vertex b) {
            return depth[a] != depth[b] ? depth[a] < depth[b] : a < b;
        });
        std::vector<Label> piece_layers;
        for (Vertex v : piece) piece_layers.push_back(depth[v]);
        parts.push_back(piece);
        layers.push_back(std::move(piece_layers));

        std::vector<Vertex> rest;
        for (Vertex v : c)
            if (part_of[v] != new_part) rest.push_back(v);
        std::vector<int> candidates = task.touching;
        candidates.push_back(new_part);
        for (auto& sub : components_of(rest)) {
            std::vector<char> hit(candidates.size(), 0);
            for (Vertex v : sub)
                for (Vertex w : g.neighbors(v))
                    for (std::size_t i = 0; i < candidates.size(); ++i)
                        if (part_of[w] == candidates[i]) hit[i] = 1;
            std::vector<int> touching;
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (hit[i]) touching.push_back(candidates[i]);
            if (static_cast<int>(touching.size()) > k - 2) {
                MinorWitness w;
                for (int p : touching) {
                    auto b = parts[p];
                    std::sort(b.begin(), b.end());
                    w.branch_sets.push_back(std::move(b));
                }
                w.branch_sets.push_back(sub);
                return w;
            }
            queue.push_back({std::move(sub), std::move(touching)});
        }
    }

    OrderedPartition out;
    for (const auto& p : parts) out.order.insert(out.order.end(), p.begin(), p.end());
    std::vector<Vertex> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[out.order[i]] = i;
    out.graph = relabel(g, out.order);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<Vertex> p;
        for (Vertex v : parts[i]) p.push_back(inv[v]);
        out.partition.parts.push_back(std::move(p));
    }
    out.partition.part_layerings = std::move(layers);
    out.partition.quotient = quotient(out.graph, out.partition.parts);
    return out;
}

struct MinorFreePlan {
    OrderedPartition decomposition;
    std::unique_ptr<Strategy> strategy;
};

/// Orders g by its decomposition and plays the chordal strategy on the
/// quotient. Returns the witness instead when g has a K_k minor that the
/// construction runs into.
inline std::variant<MinorFreePlan, MinorWitness> strategy_minor_free(const OrderedGraph& g, int k) {
    auto r = chordal_geodesic_partition(g, k);
    if (auto* w = std::get_if<MinorWitness>(&r)) return std::move(*w);
    auto& op = std::get<OrderedPartition>(r);
    MinorFreePlan plan;
    plan.strategy = strategy_quotient(std::make_shared<ChordalStrategy>(k - 2), op.graph, op.partition, k - 2);
    plan.decomposition = std::move(op);
    return plan;
}

} // namespace baker
