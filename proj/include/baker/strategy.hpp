#pragma once

// Destroyer strategies.
//
// Every strategy tracks the state of the game it believes it is playing.
// The state it is actually asked to move on may be any subgraph of the
// tracked one (same host, or injected through an order- and
// adjacency-preserving map); actions are computed on the tracked state and
// restricted, and both states delete their smallest vertex in lockstep.
// Composite strategies use this to run inner strategies on graphs that only
// shrink behind their back.

#include <cstring>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "baker/bounds.hpp"
#include "baker/layering.hpp"
#include "baker/state.hpp"

namespace baker {

/// A strategy met a graph outside its class, or its own bookkeeping broke.
class StrategyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void put(std::string& out, std::int64_t x) {
    char buf[sizeof x];
    std::memcpy(buf, &x, sizeof x);
    out.append(buf, sizeof x);
}

inline void put(std::string& out, const std::vector<Vertex>& v) {
    put(out, static_cast<std::int64_t>(v.size()));
    out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Vertex));
}

} // namespace detail

class Strategy {
  public:
    virtual ~Strategy() = default;

    /// Fixes the tracked state. Without a call the first real state is used.
    void start(GameState tracked) { tracked_ = std::make_shared<const GameState>(std::move(tracked)); }

    /// Real vertex i corresponds to tracked-host vertex map[i].
    void set_injection(std::shared_ptr<const std::vector<Vertex>> map) { injection_ = std::move(map); }

    bool started() const { return tracked_ != nullptr; }
    const GameState* tracked() const { return tracked_.get(); }

    Action next_action(const GameState& real) {
        if (real.over()) throw GameOver();
        if (has_pending_) throw std::logic_error("next_action called twice without observe");
        if (!tracked_) start(real);
        pending_ = decide(*tracked_);
        has_pending_ = true;
        return project(pending_, real);
    }

    /// Preserver's reply to the last action (none after a Delete).
    void observe(const std::optional<Interval>& reply) {
        if (!has_pending_) throw std::logic_error("observe without a pending action");
        has_pending_ = false;
        tracked_ = std::make_shared<const GameState>(apply(*tracked_, pending_, reply));
        on_observe(pending_, reply);
    }

    /// Independent copy, including any pending action.
    virtual std::unique_ptr<Strategy> fork() const = 0;
    virtual StrategySpec spec() const = 0;

    /// Fingerprint of everything future moves depend on.
    void encode(std::string& out) const {
        if (tracked_) {
            detail::put(out, tracked_->round);
            detail::put(out, tracked_->alive);
        } else {
            detail::put(out, -1);
        }
        detail::put(out, has_pending_ ? 1 : 0);
        encode_memory(out);
    }

  protected:
    Strategy() = default;
    Strategy(const Strategy&) = default;
    Strategy& operator=(const Strategy&) = default;

    virtual Action decide(const GameState& tracked) = 0;
    virtual void on_observe(const Action&, const std::optional<Interval>&) {}
    virtual void encode_memory(std::string&) const {}

  private:
    Action project(const Action& a, const GameState& real) const {
        if (a.is_delete()) return a;
        const GameState& t = *tracked_;
        if (!injection_ && real.alive.size() == t.alive.size() && real.alive == t.alive) return a;
        Action out = Action::restrict(Layering(real.alive.size()), a.shadow);
        std::vector<char> used(t.alive.size(), 0);
        std::size_t j = 0;
        Vertex prev = -1;
        for (std::size_t i = 0; i < real.alive.size(); ++i) {
            Vertex h = real.alive[i];
            if (injection_) {
                if (h < 0 || h >= static_cast<Vertex>(injection_->size()))
                    throw StrategyError("vertex outside the injection");
                h = (*injection_)[h];
            }
            if (h <= prev) throw StrategyError("injection does not preserve the order");
            prev = h;
            while (j < t.alive.size() && t.alive[j] < h) ++j;
            if (j == t.alive.size() || t.alive[j] != h)
                throw StrategyError("vertex " + std::to_string(real.alive[i]) + " is not in the tracked graph");
            out.layering[i] = a.layering[j];
            used[j] = 1;
        }
        for (std::size_t q = 0; q < t.alive.size(); ++q)
            if (!used[q]) out.shadow.push_back(a.layering[q]);
        return out;
    }

    std::shared_ptr<const GameState> tracked_;
    std::shared_ptr<const std::vector<Vertex>> injection_;
    Action pending_;
    bool has_pending_ = false;
};

/// Owning pointer with deep copies through fork().
class StrategyBox {
  public:
    StrategyBox() = default;
    explicit StrategyBox(std::unique_ptr<Strategy> p) : p_(std::move(p)) {}
    StrategyBox(const StrategyBox& o) : p_(o.p_ ? o.p_->fork() : nullptr) {}
    StrategyBox(StrategyBox&&) noexcept = default;
    StrategyBox& operator=(StrategyBox o) noexcept {
        p_ = std::move(o.p_);
        return *this;
    }
    Strategy* operator->() const { return p_.get(); }
    Strategy& operator*() const { return *p_; }
    explicit operator bool() const { return p_ != nullptr; }

  private:
    std::unique_ptr<Strategy> p_;
};

using StrategyPrototype = std::shared_ptr<const Strategy>;

template <class Derived>
class StrategyImpl : public Strategy {
  public:
    std::unique_ptr<Strategy> fork() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
};

namespace detail {

inline Action edgeless_action(const GameState& t) {
    if (t.graph.m() > 0) throw StrategyError("edgeless strategy on a graph with edges");
    if (t.size() <= 1) return Action::remove();
    const Label h = t.rseq.head();
    Layering l(t.alive.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = sat_mul(static_cast<Label>(i + 1), h);
    return Action::restrict(std::move(l));
}

} // namespace detail

/// Spreads the vertices head(r) apart so any reply keeps at most one, then
/// deletes it.
class EdgelessStrategy final : public StrategyImpl<EdgelessStrategy> {
  public:
    StrategySpec spec() const override { return StrategySpec::edgeless(); }

  protected:
    Action decide(const GameState& t) override { return detail::edgeless_action(t); }
};

/// Clique-sum combination: a base strategy for G[B] and a leaf strategy for
/// the pieces hanging off it. Each base move is preceded by a Restrict to a
/// single component; once no base vertex survives, the remaining counter is
/// paid in Deletes and the leaf strategy takes over.
class CliqueSumStrategy final : public StrategyImpl<CliqueSumStrategy> {
  public:
    CliqueSumStrategy(StrategyPrototype base, StrategyPrototype leaf, std::shared_ptr<const std::vector<Vertex>> base_set)
        : base_proto_(std::move(base)), leaf_proto_(std::move(leaf)), base_set_(std::move(base_set)) {
        if (!std::is_sorted(base_set_->begin(), base_set_->end()))
            throw std::invalid_argument("clique-sum base must be sorted");
    }

    StrategySpec spec() const override { return StrategySpec::clique_sum(base_proto_->spec(), leaf_proto_->spec()); }

    /// Base-class rounds still available (the induction counter).
    std::int64_t counter() const { return n_; }

  protected:
    Action decide(const GameState& t) override {
        if (phase_ == Phase::Start) {
            even_ = t.rseq.every_second();
            t1_ = round_bound(base_proto_->spec(), even_);
            n_ = t1_;
            phase_ = Phase::Spread;
        }
        if (phase_ == Phase::Classify) {
            base_pos_.clear();
            for (int i = 0; i < t.size(); ++i)
                if (std::binary_search(base_set_->begin(), base_set_->end(), t.alive[i])) base_pos_.push_back(i);
            if (base_pos_.empty()) {
                burst_left_ = sat_mul(2, n_);
                phase_ = Phase::Burst;
            } else if (n_ == 0) {
                throw StrategyError("clique-sum base outlived its round bound");
            } else {
                phase_ = Phase::Base;
            }
        }
        if (phase_ == Phase::Burst && burst_left_ == 0) phase_ = Phase::Leaf;
        switch (phase_) {
        case Phase::Spread: return Action::restrict(spread_componentwise_layering(t.graph, t.rseq.head()));
        case Phase::Burst: return Action::remove();
        case Phase::Leaf:
            if (!leaf_) leaf_ = StrategyBox(leaf_proto_->fork());
            return leaf_->next_action(t);
        case Phase::Base: return base_move(t);
        default: throw std::logic_error("clique-sum: unreachable phase");
        }
    }

    void on_observe(const Action&, const std::optional<Interval>& reply) override {
        switch (phase_) {
        case Phase::Spread: phase_ = Phase::Classify; break;
        case Phase::Burst: --burst_left_; break;
        case Phase::Leaf: leaf_->observe(reply); break;
        case Phase::Base:
            base_->observe(reply);
            --n_;
            phase_ = Phase::Spread;
            break;
        default: break;
        }
    }

    void encode_memory(std::string& out) const override {
        detail::put(out, static_cast<std::int64_t>(phase_));
        detail::put(out, n_);
        detail::put(out, burst_left_);
        detail::put(out, *base_set_);
        if (base_) base_->encode(out);
        out.push_back('|');
        if (leaf_) leaf_->encode(out);
    }

  private:
    enum class Phase { Start, Spread, Classify, Base, Burst, Leaf };

    Action base_move(const GameState& t) {
        GameState bs = t.restricted(base_pos_, even_.tail(t1_ - n_), t.round);
        if (!base_) base_ = StrategyBox(base_proto_->fork());
        Action a = base_->next_action(bs);
        if (a.is_delete()) {
            if (bs.alive.front() != t.alive.front())
                throw StrategyError("clique-sum base does not start the graph");
            return a;
        }
        // Lift: every component C of G - B gets the label of its smallest
        // neighbour in B.
        Layering l(t.alive.size(), 0);
        std::vector<char> in_base(t.alive.size(), 0);
        for (std::size_t i = 0; i < base_pos_.size(); ++i) {
            in_base[base_pos_[i]] = 1;
            l[base_pos_[i]] = a.layering[i];
        }
        std::vector<int> rest;
        for (int i = 0; i < t.size(); ++i)
            if (!in_base[i]) rest.push_back(i);
        OrderedGraph outside = t.graph.induced_sparse(rest);
        int count = 0;
        auto comp = connected_components(outside, &count);
        std::vector<int> anchor(static_cast<std::size_t>(count), -1);
        for (std::size_t q = 0; q < rest.size(); ++q) {
            for (Vertex w : t.graph.neighbors(rest[q])) {
                if (!in_base[w]) continue;
                int& z = anchor[comp[q]];
                if (z < 0 || w < z) z = w;
            }
        }
        for (std::size_t q = 0; q < rest.size(); ++q) {
            int z = anchor[comp[q]];
            if (z < 0) throw StrategyError("clique-sum component without a base neighbour");
            l[rest[q]] = l[z];
        }
        return Action::restrict(std::move(l), std::move(a.shadow));
    }

    StrategyPrototype base_proto_, leaf_proto_;
    std::shared_ptr<const std::vector<Vertex>> base_set_;
    StrategyBox base_, leaf_;
    Phase phase_ = Phase::Start;
    RSequence even_;
    std::int64_t t1_ = 0, n_ = 0, burst_left_ = 0;
    std::vector<int> base_pos_;
};

/// Chordal orderings of left-degree at most d: a componentwise Restrict, a
/// BFS Restrict from the smallest vertex, then the surviving BFS layers are a
/// nested clique-sum of left-degree d-1 pieces.
class ChordalStrategy final : public StrategyImpl<ChordalStrategy> {
  public:
    explicit ChordalStrategy(int d) : d_(d) {
        if (d < 0) throw std::invalid_argument("chordal strategy needs d >= 0");
    }

    StrategySpec spec() const override { return StrategySpec::chordal(d_); }

  protected:
    Action decide(const GameState& t) override {
        if (d_ == 0) return detail::edgeless_action(t);
        if (!checked_) {
            auto c = check_chordal_ordering(t.graph);
            if (!c.chordal)
                throw StrategyError("ordering is not chordal at vertex " + std::to_string(t.alive[c.witness]));
            if (c.max_left_degree > d_)
                throw StrategyError("left-degree " + std::to_string(c.max_left_degree) + " exceeds " +
                                    std::to_string(d_));
            checked_ = true;
        }
        switch (phase_) {
        case 0: return Action::restrict(spread_componentwise_layering(t.graph, t.rseq.head()));
        case 1: {
            Layering depth;
            try {
                depth = bfs_layering(t.graph, 0);
            } catch (const DisconnectedGraph&) {
                throw StrategyError("chordal strategy: graph is not connected after the componentwise restriction");
            }
            bfs_ids_ = t.alive;
            bfs_depth_ = depth;
            return Action::restrict(std::move(depth));
        }
        default: return nest_->next_action(t);
        }
    }

    void on_observe(const Action&, const std::optional<Interval>& reply) override {
        if (d_ == 0) return;
        if (phase_ == 0) {
            phase_ = 1;
        } else if (phase_ == 1) {
            phase_ = 2;
            build_nest();
        } else {
            nest_->observe(reply);
        }
    }

    void encode_memory(std::string& out) const override {
        detail::put(out, phase_);
        if (nest_) nest_->encode(out);
    }

  private:
    void build_nest() {
        const GameState& t = *tracked();
        if (t.over()) return;
        std::vector<Label> depth(t.alive.size());
        for (std::size_t i = 0; i < t.alive.size(); ++i) {
            auto it = std::lower_bound(bfs_ids_.begin(), bfs_ids_.end(), t.alive[i]);
            depth[i] = bfs_depth_[static_cast<std::size_t>(it - bfs_ids_.begin())];
        }
        auto [lo, hi] = std::minmax_element(depth.begin(), depth.end());
        StrategyPrototype nest = std::make_shared<ChordalStrategy>(d_ - 1);
        for (Label top = *lo + 1; top <= *hi; ++top) {
            auto base = std::make_shared<std::vector<Vertex>>();
            for (std::size_t i = 0; i < t.alive.size(); ++i)
                if (depth[i] < top) base->push_back(t.alive[i]);
            nest = std::make_shared<CliqueSumStrategy>(nest, std::make_shared<ChordalStrategy>(d_ - 1), std::move(base));
        }
        nest_ = StrategyBox(nest->fork());
        bfs_ids_.clear();
        bfs_depth_.clear();
    }

    int d_;
    int phase_ = 0;
    bool checked_ = false;
    std::vector<Vertex> bfs_ids_;
    Layering bfs_depth_;
    StrategyBox nest_;
};

/// Partition of the host graph used by the quotient strategy, indexed by
/// host vertex.
struct QuotientData {
    GeodesicPartition partition;
    std::shared_ptr<const OrderedGraph> quotient;
    std::vector<int> part_of;
    std::vector<Label> part_label;
    int d = 1;

    static std::shared_ptr<const QuotientData> make(const OrderedGraph& host, GeodesicPartition gp, int d) {
        if (d < 1) throw std::invalid_argument("quotient strategy needs d >= 1");
        if (auto c = check_geodesic_partition(host, gp, d); !c)
            throw StrategyError("invalid geodesic partition: " + c.diagnostic);
        auto q = std::make_shared<QuotientData>();
        q->part_of.assign(static_cast<std::size_t>(host.n()), -1);
        q->part_label.assign(static_cast<std::size_t>(host.n()), 0);
        for (std::size_t i = 0; i < gp.parts.size(); ++i)
            for (std::size_t j = 0; j < gp.parts[i].size(); ++j) {
                q->part_of[gp.parts[i][j]] = static_cast<int>(i);
                q->part_label[gp.parts[i][j]] = gp.part_layerings[i][j];
            }
        q->quotient = std::make_shared<const OrderedGraph>(gp.quotient);
        q->partition = std::move(gp);
        q->d = d;
        return q;
    }
};

/// Plays an inner strategy on the quotient by a width-d geodesic partition.
/// Each inner move becomes one Restrict (lifted, or the extension of the
/// deleted part's layering) followed by d * head Deletes.
class QuotientStrategy final : public StrategyImpl<QuotientStrategy> {
  public:
    QuotientStrategy(StrategyPrototype inner, std::shared_ptr<const QuotientData> data)
        : inner_proto_(std::move(inner)), data_(std::move(data)) {}

    StrategySpec spec() const override { return StrategySpec::quotient(inner_proto_->spec(), data_->d); }

  protected:
    Action decide(const GameState& t) override {
        if (!quot_) {
            if (t.host->n() != static_cast<int>(data_->part_of.size()))
                throw StrategyError("partition does not match the host graph");
            std::vector<Vertex> parts;
            for (Vertex v : t.alive) parts.push_back(data_->part_of[v]);
            std::sort(parts.begin(), parts.end());
            parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
            quot_ = std::make_shared<const GameState>(
                GameState::make(data_->quotient, std::move(parts), t.rseq.quotient_thinned(data_->d)));
            inner_ = StrategyBox(inner_proto_->fork());
        }
        if (burst_left_ > 0) return Action::remove();
        const GameState& h = *quot_;
        if (h.over()) throw StrategyError("quotient exhausted while vertices remain");
        inner_action_ = inner_->next_action(h);
        burst_next_ = sat_mul(data_->d, t.rseq.head());
        if (inner_action_.is_delete()) {
            const Vertex first = h.alive.front();
            std::vector<Vertex> part;
            std::vector<Label> labels;
            for (int i = 0; i < t.size(); ++i)
                if (data_->part_of[t.alive[i]] == first) {
                    part.push_back(i);
                    labels.push_back(data_->part_label[t.alive[i]]);
                }
            if (part.empty()) return Action::restrict(Layering(t.alive.size(), 0));
            return Action::restrict(extend_geodesic_layering(t.graph, part, labels));
        }
        Layering l(t.alive.size());
        std::vector<char> present(h.alive.size(), 0);
        for (int i = 0; i < t.size(); ++i) {
            int pos = h.local(data_->part_of[t.alive[i]]);
            if (pos < 0) throw StrategyError("vertex in a part the quotient already removed");
            l[i] = inner_action_.layering[pos];
            present[pos] = 1;
        }
        std::vector<Label> shadow = inner_action_.shadow;
        for (std::size_t p = 0; p < present.size(); ++p)
            if (!present[p]) shadow.push_back(inner_action_.layering[p]);
        return Action::restrict(std::move(l), std::move(shadow));
    }

    void on_observe(const Action& a, const std::optional<Interval>& reply) override {
        if (a.is_delete()) {
            --burst_left_;
            return;
        }
        if (inner_action_.is_delete()) {
            quot_ = std::make_shared<const GameState>(apply_delete(*quot_));
            inner_->observe(std::nullopt);
        } else {
            quot_ = std::make_shared<const GameState>(apply_restrict(*quot_, inner_action_.layering, *reply));
            inner_->observe(reply);
        }
        burst_left_ = burst_next_;
    }

    void encode_memory(std::string& out) const override {
        detail::put(out, burst_left_);
        if (quot_) {
            detail::put(out, quot_->alive);
            inner_->encode(out);
        }
    }

  private:
    StrategyPrototype inner_proto_;
    std::shared_ptr<const QuotientData> data_;
    std::shared_ptr<const GameState> quot_;
    StrategyBox inner_;
    Action inner_action_;
    std::int64_t burst_left_ = 0, burst_next_ = 0;
};

/// Restricts along each coordinate of a distortion-beta embedding, then
/// deletes the few survivors.
class DistortionStrategy final : public StrategyImpl<DistortionStrategy> {
  public:
    explicit DistortionStrategy(std::shared_ptr<const Embedding> e) : e_(std::move(e)) {}

    StrategySpec spec() const override { return StrategySpec::distortion(e_->dim, e_->beta); }

  protected:
    Action decide(const GameState& t) override {
        if (coord_ < e_->dim) {
            Layering l(t.alive.size());
            for (std::size_t i = 0; i < l.size(); ++i)
                l[i] = static_cast<Label>(std::floor(e_->coords[t.alive[i]][coord_] / e_->beta));
            head_ = t.rseq.head();
            return Action::restrict(std::move(l));
        }
        if (!packing_checked_) {
            if (static_cast<long double>(t.size()) > std::floor(survivors_))
                throw StrategyError("packing bound violated: " + std::to_string(t.size()) + " survivors");
            packing_checked_ = true;
        }
        return Action::remove();
    }

    void on_observe(const Action& a, const std::optional<Interval>&) override {
        if (a.is_delete()) return;
        survivors_ *= static_cast<long double>(e_->beta) * static_cast<long double>(head_) + 1;
        ++coord_;
    }

    void encode_memory(std::string& out) const override { detail::put(out, coord_); }

  private:
    std::shared_ptr<const Embedding> e_;
    int coord_ = 0;
    std::int64_t head_ = 1;
    long double survivors_ = 1;
    bool packing_checked_ = false;
};

/// Deletes until the graph is empty.
class DeleteOnlyStrategy final : public StrategyImpl<DeleteOnlyStrategy> {
  public:
    StrategySpec spec() const override { return StrategySpec::edgeless(); }

  protected:
    Action decide(const GameState&) override { return Action::remove(); }
};

inline std::unique_ptr<Strategy> strategy_edgeless() { return std::make_unique<EdgelessStrategy>(); }

inline std::unique_ptr<Strategy> strategy_chordal(int d) { return std::make_unique<ChordalStrategy>(d); }

inline std::unique_ptr<Strategy> strategy_cliquesum(StrategyPrototype base, StrategyPrototype leaf,
                                                    std::vector<Vertex> base_set) {
    std::sort(base_set.begin(), base_set.end());
    return std::make_unique<CliqueSumStrategy>(std::move(base), std::move(leaf),
                                               std::make_shared<const std::vector<Vertex>>(std::move(base_set)));
}

inline std::unique_ptr<Strategy> strategy_quotient(StrategyPrototype inner, const OrderedGraph& host,
                                                   GeodesicPartition gp, int d) {
    return std::make_unique<QuotientStrategy>(std::move(inner), QuotientData::make(host, std::move(gp), d));
}

inline std::unique_ptr<Strategy> strategy_distortion(const OrderedGraph& host, Embedding e) {
    validate_embedding(host, e);
    return std::make_unique<DistortionStrategy>(std::make_shared<const Embedding>(std::move(e)));
}

/// Runs `host_strategy` on `host_state` while the real game is played on a
/// subgraph. `injection[v]` is the host vertex of subgraph vertex v; it must
/// be increasing and map edges to edges. Without an injection the subgraph
/// shares the host's vertex identifiers.
inline std::unique_ptr<Strategy> strategy_subgraph(std::unique_ptr<Strategy> host_strategy, GameState host_state,
                                                   const OrderedGraph* subgraph = nullptr,
                                                   std::vector<Vertex> injection = {}) {
    if (subgraph) {
        if (static_cast<int>(injection.size()) != subgraph->n())
            throw StrategyError("injection must cover the subgraph");
        for (std::size_t i = 0; i < injection.size(); ++i) {
            if (injection[i] < 0 || injection[i] >= host_state.host->n())
                throw StrategyError("injection leaves the host graph");
            if (i > 0 && injection[i] <= injection[i - 1]) throw StrategyError("injection does not preserve the order");
        }
        for (auto [u, v] : subgraph->edges())
            if (!host_state.host->adjacent(injection[u], injection[v]))
                throw StrategyError("injection does not preserve adjacency");
        host_strategy->set_injection(std::make_shared<const std::vector<Vertex>>(std::move(injection)));
    }
    host_strategy->start(std::move(host_state));
    return host_strategy;
}

} // namespace baker
