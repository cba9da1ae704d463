#pragma once

// Refereed play, Preserver policies, transcripts and exhaustive minimax.

#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "baker/state.hpp"
#include "baker/strategy.hpp"

namespace baker {

inline constexpr std::int64_t kDefaultRoundCap = 10'000;

struct Move {
    std::int64_t round = 0; // 1-based
    bool restrict = false;
    Layering layering;      // host-order labels of the vertices alive before the move
    std::optional<Interval> reply;
    int n_before = 0, n_after = 0;
};

struct Transcript {
    int n0 = 0;
    std::vector<Move> moves;
    bool valid = true;
    bool won = false; // graph emptied within the budget
    std::string diagnostic;

    std::int64_t rounds() const { return static_cast<std::int64_t>(moves.size()); }
};

inline void write_transcript(std::ostream& out, const Transcript& t) {
    for (const auto& m : t.moves) {
        out << "round " << m.round << " | action " << (m.restrict ? "restrict" : "delete") << " | reply "
            << (m.reply ? to_string(*m.reply) : std::string("none")) << " | n " << m.n_after << '\n';
    }
    out << "# rounds " << t.rounds() << (t.won ? " won" : " not-won") << (t.valid ? "" : " invalid: " + t.diagnostic)
        << '\n';
}

class ReplayMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Re-applies every move and checks the recorded vertex counts.
inline GameState replay(GameState s, const Transcript& t) {
    for (const auto& m : t.moves) {
        if (s.size() != m.n_before) throw ReplayMismatch("round " + std::to_string(m.round) + ": vertex count differs");
        s = m.restrict ? apply_restrict(s, m.layering, *m.reply) : apply_delete(s);
        if (s.size() != m.n_after) throw ReplayMismatch("round " + std::to_string(m.round) + ": result differs");
    }
    return s;
}

class Preserver {
  public:
    virtual ~Preserver() = default;
    /// `pending` is the strategy right after it produced `action`.
    virtual Interval reply(const GameState& s, const Action& action, const Strategy& pending) = 0;
};

/// Uniform choice among the canonical replies.
class RandomPreserver final : public Preserver {
  public:
    explicit RandomPreserver(std::uint64_t seed) : rng_(seed) {}
    Interval reply(const GameState& s, const Action& a, const Strategy&) override {
        auto options = legal_replies(s, a.layering);
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        return options[pick(rng_)];
    }

  private:
    std::mt19937_64 rng_;
};

/// Keeps as many vertices as possible (earliest window on ties).
class GreedyPreserver final : public Preserver {
  public:
    Interval reply(const GameState& s, const Action& a, const Strategy&) override {
        auto options = legal_replies(s, a.layering);
        Interval best = options.front();
        std::size_t best_count = 0;
        for (const auto& iv : options) {
            std::size_t c = 0;
            for (Label x : a.layering) c += iv.contains(x);
            if (c > best_count) best = iv, best_count = c;
        }
        return best;
    }
};

/// Outcome of an exhaustive search: exact worst-case rounds, or nothing when
/// the cap is exceeded.
struct MinimaxResult {
    std::optional<std::int64_t> rounds;
    std::size_t states = 0;
    bool exceeded() const { return !rounds; }
};

class MinimaxSearch {
  public:
    explicit MinimaxSearch(std::int64_t cap = kDefaultRoundCap) : cap_(cap) {}

    /// Worst case over all Preserver replies, with `strategy` at `s`.
    std::optional<std::int64_t> value(const GameState& s, const Strategy& strategy) {
        auto st = strategy.fork();
        auto v = solve(s, std::move(st), 0);
        if (v > cap_) return std::nullopt;
        return v;
    }

    /// Best reply for Preserver after `pending` produced `a` (the one with the
    /// largest remaining value; earliest on ties).
    Interval best_reply(const GameState& s, const Action& a, const Strategy& pending) {
        auto options = legal_replies(s, a.layering, a.shadow);
        Interval best = options.front();
        std::int64_t best_v = -1;
        for (const auto& iv : options) {
            auto child = pending.fork();
            child->observe(iv);
            std::int64_t v = solve(apply_restrict(s, a.layering, iv), std::move(child), 1);
            if (v > best_v) best = iv, best_v = v;
            if (v > cap_) break;
        }
        return best;
    }

    std::size_t states() const { return memo_.size(); }

  private:
    std::int64_t solve(const GameState& s, std::unique_ptr<Strategy> st, std::int64_t depth) {
        if (s.over()) return 0;
        if (depth >= cap_) return cap_ + 1;
        std::string key;
        detail::put(key, s.round);
        detail::put(key, s.alive);
        st->encode(key);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Action a = st->next_action(s);
        std::int64_t v = 0;
        if (a.is_delete()) {
            st->observe(std::nullopt);
            v = 1 + solve(apply_delete(s), std::move(st), depth + 1);
        } else {
            auto options = legal_replies(s, a.layering, a.shadow);
            for (std::size_t i = 0; i < options.size(); ++i) {
                std::unique_ptr<Strategy> child = i + 1 == options.size() ? std::move(st) : st->fork();
                child->observe(options[i]);
                v = std::max(v, 1 + solve(apply_restrict(s, a.layering, options[i]), std::move(child), depth + 1));
                if (v > cap_) break;
            }
        }
        v = std::min(v, cap_ + 1);
        if (v <= cap_) memo_.emplace(std::move(key), v);
        return v;
    }

    std::int64_t cap_;
    std::unordered_map<std::string, std::int64_t> memo_;
};

/// Preserver that replies optimally against the strategy it faces.
class ExhaustivePreserver final : public Preserver {
  public:
    explicit ExhaustivePreserver(std::int64_t cap = kDefaultRoundCap) : search_(cap) {}
    Interval reply(const GameState& s, const Action& a, const Strategy& pending) override {
        return search_.best_reply(s, a, pending);
    }

  private:
    MinimaxSearch search_;
};

inline MinimaxResult minimax_rounds(const Strategy& strategy, const GameState& s0, std::int64_t cap = kDefaultRoundCap) {
    MinimaxSearch search(cap);
    MinimaxResult r;
    r.rounds = search.value(s0, strategy);
    r.states = search.states();
    return r;
}

/// Plays until the graph is empty or `budget` rounds have passed. Illegal
/// actions or replies, and strategy failures, end the game with an invalid
/// transcript.
inline Transcript play(Strategy& strategy, Preserver& preserver, GameState s, std::int64_t budget = kDefaultRoundCap) {
    if (budget < 0) throw std::invalid_argument("budget must be non-negative");
    Transcript t;
    t.n0 = s.size();
    auto fail = [&](const std::string& why) {
        t.valid = false;
        t.diagnostic = "round " + std::to_string(s.round + 1) + ": " + why;
    };
    while (!s.over() && t.rounds() < budget) {
        Move m;
        m.round = s.round + 1;
        m.n_before = s.size();
        Action a;
        try {
            a = strategy.next_action(s);
        } catch (const std::exception& e) {
            fail(std::string("strategy failed: ") + e.what());
            break;
        }
        try {
            if (a.is_delete()) {
                s = apply_delete(s);
                strategy.observe(std::nullopt);
            } else {
                check_restrict(s, a.layering);
                Interval iv = preserver.reply(s, a, strategy);
                m.restrict = true;
                m.layering = a.layering;
                m.reply = iv;
                s = apply_restrict(s, a.layering, iv);
                strategy.observe(iv);
            }
        } catch (const IllegalMove& e) {
            fail(e.what());
            break;
        } catch (const std::exception& e) {
            fail(std::string("strategy failed: ") + e.what());
            break;
        }
        m.n_after = s.size();
        t.moves.push_back(std::move(m));
    }
    t.won = t.valid && s.over();
    return t;
}

} // namespace baker
