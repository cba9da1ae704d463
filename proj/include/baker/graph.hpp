#pragma once

// Ordered simple graphs. Vertex identifiers are dense integers 0..n-1 and
// their numeric order is the linear order of the ordered graph.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace baker {

using Vertex = int;
using Label = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

/// Integer label per vertex, indexed by vertex. Valid for a graph when every
/// edge joins labels that differ by at most one.
using Layering = std::vector<Label>;

class GraphError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class OrderedGraph {
  public:
    OrderedGraph() : offsets_(1, 0) {}

    explicit OrderedGraph(int n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
        if (n < 0) throw GraphError("negative vertex count");
    }

    /// Builds a graph from an edge list; rejects loops, parallel edges and
    /// out-of-range endpoints.
    static OrderedGraph from_edges(int n, std::span<const Edge> edges) {
        OrderedGraph g(n);
        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
            ++degree[u];
            ++degree[v];
        }
        for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
        g.adj_.resize(static_cast<std::size_t>(g.offsets_[n]));
        std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.adj_[fill[u]++] = v;
            g.adj_[fill[v]++] = u;
        }
        for (int v = 0; v < n; ++v) {
            auto first = g.adj_.begin() + g.offsets_[v];
            auto last = g.adj_.begin() + g.offsets_[v + 1];
            std::sort(first, last);
            if (std::adjacent_find(first, last) != last)
                throw GraphError("parallel edge at vertex " + std::to_string(v));
        }
        return g;
    }

    static OrderedGraph from_edges(int n, const std::vector<Edge>& edges) {
        return from_edges(n, std::span<const Edge>(edges));
    }

    int n() const { return n_; }
    std::size_t m() const { return adj_.size() / 2; }
    bool empty() const { return n_ == 0; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
    }
    int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool adjacent(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m());
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    // Named vertex sets (demand, forbidden, ...). Kept sorted and unique.
    const std::map<std::string, std::vector<Vertex>>& annotations() const { return annotations_; }

    void annotate(const std::string& name, Vertex v) {
        if (v < 0 || v >= n_) throw GraphError("annotation vertex out of range: " + std::to_string(v));
        auto& set = annotations_[name];
        auto it = std::lower_bound(set.begin(), set.end(), v);
        if (it == set.end() || *it != v) set.insert(it, v);
    }

    const std::vector<Vertex>* annotation(const std::string& name) const {
        auto it = annotations_.find(name);
        return it == annotations_.end() ? nullptr : &it->second;
    }

    /// Induced subgraph on `keep` (sorted, unique); vertex keep[i] becomes i.
    /// Annotations are restricted.
    OrderedGraph induced(std::span<const Vertex> keep) const {
        std::vector<int> pos(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
        return induced_with(keep, [&](Vertex v) { return pos[v]; });
    }

    /// Same as induced() without an O(n) position table; lookups use binary
    /// search in `keep`, which must be sorted.
    OrderedGraph induced_sparse(std::span<const Vertex> keep) const {
        return induced_with(keep, [&](Vertex v) {
            auto it = std::lower_bound(keep.begin(), keep.end(), v);
            return (it != keep.end() && *it == v) ? static_cast<int>(it - keep.begin()) : -1;
        });
    }

    friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) {
        return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adj_ == b.adj_ && a.annotations_ == b.annotations_;
    }

  private:
    template <class PosFn>
    OrderedGraph induced_with(std::span<const Vertex> keep, PosFn pos) const {
        OrderedGraph g(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i) {
            for (Vertex w : neighbors(keep[i])) {
                int p = pos(w);
                if (p >= 0) g.adj_.push_back(p);
            }
            g.offsets_[i + 1] = static_cast<int>(g.adj_.size());
        }
        for (const auto& [name, set] : annotations_) {
            std::vector<Vertex> sub;
            for (Vertex v : set) {
                int p = pos(v);
                if (p >= 0) sub.push_back(p);
            }
            if (!sub.empty()) g.annotations_[name] = std::move(sub);
        }
        return g;
    }

    int n_ = 0;
    std::vector<int> offsets_;
    std::vector<Vertex> adj_;
    std::map<std::string, std::vector<Vertex>> annotations_;
};

inline constexpr int kUnreachable = -1;

/// Breadth-first distances from `source`; kUnreachable for other components.
inline std::vector<int> bfs_distances(const OrderedGraph& g, Vertex source) {
    std::vector<int> dist(static_cast<std::size_t>(g.n()), kUnreachable);
    std::vector<Vertex> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

/// Component index per vertex; components are numbered 0.. in order of their
/// smallest vertex.
inline std::vector<int> connected_components(const OrderedGraph& g, int* count = nullptr) {
    std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
    int c = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = c;
        stack.assign(1, s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u))
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

inline std::vector<std::vector<int>> all_pairs_bfs(const OrderedGraph& g) {
    std::vector<std::vector<int>> d;
    d.reserve(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) d.push_back(bfs_distances(g, v));
    return d;
}

/// Returns the graph with vertex `order[i]` renamed to i, so that `order`
/// lists the old identifiers in their new linear order.
inline OrderedGraph relabel(const OrderedGraph& g, std::span<const Vertex> order) {
    if (static_cast<int>(order.size()) != g.n()) throw GraphError("relabel: order is not a permutation");
    std::vector<int> inv(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        if (v < 0 || v >= g.n() || inv[v] >= 0) throw GraphError("relabel: order is not a permutation");
        inv[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(inv[u], inv[v]);
    auto out = OrderedGraph::from_edges(g.n(), edges);
    for (const auto& [name, set] : g.annotations())
        for (Vertex v : set) out.annotate(name, inv[v]);
    return out;
}

} // namespace baker
