#pragma once

// Infinite positive sequences r_1, r_2, ... driving the game. They are never
// materialised: a sequence is a shared rule plus an offset, so tail() is
// index arithmetic and thinned sequences wrap their parent.

#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "baker/schedule.hpp"

namespace baker {

class SequenceRule {
  public:
    virtual ~SequenceRule() = default;
    /// r_i for i >= 1; indices at kSaturated stand for "far out".
    virtual std::int64_t value(std::int64_t i) const = 0;
    virtual std::string describe() const = 0;
};

class RSequence {
  public:
    RSequence() : RSequence(constant(1)) {}
    RSequence(std::shared_ptr<const SequenceRule> rule, std::int64_t offset = 0)
        : rule_(std::move(rule)), offset_(offset) {}

    /// r_i of this sequence, 1-based.
    std::int64_t at(std::int64_t i) const {
        if (i < 1) throw std::out_of_range("sequence index must be positive");
        return rule_->value(sat_add(offset_, i));
    }
    std::int64_t head() const { return at(1); }
    RSequence tail(std::int64_t s = 1) const { return RSequence(rule_, sat_add(offset_, s)); }
    std::int64_t offset() const { return offset_; }
    const std::shared_ptr<const SequenceRule>& rule() const { return rule_; }

    std::string describe() const {
        return offset_ == 0 ? rule_->describe() : "tail" + std::to_string(offset_) + "(" + rule_->describe() + ")";
    }

    /// r_2, r_4, r_6, ...
    RSequence every_second() const;
    /// r_{i_0+1}, r_{i_1+1}, ... with i_0 = 0 and i_j = i_{j-1} + d r_{i_{j-1}+1} + 1.
    RSequence quotient_thinned(std::int64_t d) const;

    static RSequence constant(std::int64_t c);
    /// ceil(a * b^i), clamped to at least 1.
    static RSequence geometric(double a, double b);
    static RSequence schedule(const EpsSchedule& s);
    static RSequence with_prefix(std::vector<std::int64_t> prefix, RSequence rest);
    /// Parses `const:<c>`, `geom:<a>,<b>` or `schedule:<problem>:<k>`.
    static RSequence parse(const std::string& descriptor);

    /// True when r'_i <= r_i for the first `horizon` indices (domination is
    /// only checkable on a finite window).
    bool dominated_by(const RSequence& other, std::int64_t horizon = 64) const {
        for (std::int64_t i = 1; i <= horizon; ++i)
            if (at(i) > other.at(i)) return false;
        return true;
    }

  private:
    std::shared_ptr<const SequenceRule> rule_;
    std::int64_t offset_ = 0;
};

namespace detail {

class ConstantRule final : public SequenceRule {
  public:
    explicit ConstantRule(std::int64_t c) : c_(c) {}
    std::int64_t value(std::int64_t) const override { return c_; }
    std::string describe() const override { return "const:" + std::to_string(c_); }

  private:
    std::int64_t c_;
};

class GeometricRule final : public SequenceRule {
  public:
    GeometricRule(double a, double b) : a_(a), b_(b) {}
    std::int64_t value(std::int64_t i) const override {
        long double v = std::ceil(static_cast<long double>(a_) * std::pow(static_cast<long double>(b_), static_cast<long double>(i)));
        if (!(v < static_cast<long double>(kMaxIntervalLength))) return kMaxIntervalLength;
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(v));
    }
    std::string describe() const override {
        std::ostringstream s;
        s << "geom:" << a_ << ',' << b_;
        return s.str();
    }

  private:
    double a_, b_;
};

class ScheduleRule final : public SequenceRule {
  public:
    explicit ScheduleRule(EpsSchedule s) : s_(s) {}
    std::int64_t value(std::int64_t i) const override { return s_.ell(i); }
    std::string describe() const override { return "schedule:" + to_string(s_.problem()) + ":" + std::to_string(s_.k()); }

  private:
    EpsSchedule s_;
};

class PrefixRule final : public SequenceRule {
  public:
    PrefixRule(std::vector<std::int64_t> prefix, RSequence rest) : prefix_(std::move(prefix)), rest_(std::move(rest)) {}
    std::int64_t value(std::int64_t i) const override {
        if (i <= static_cast<std::int64_t>(prefix_.size())) return prefix_[static_cast<std::size_t>(i - 1)];
        return rest_.at(i - static_cast<std::int64_t>(prefix_.size()));
    }
    std::string describe() const override {
        std::string s = "prefix[";
        for (std::size_t i = 0; i < prefix_.size(); ++i) s += (i ? "," : "") + std::to_string(prefix_[i]);
        return s + "]+" + rest_.describe();
    }

  private:
    std::vector<std::int64_t> prefix_;
    RSequence rest_;
};

class EverySecondRule final : public SequenceRule {
  public:
    explicit EverySecondRule(RSequence parent) : parent_(std::move(parent)) {}
    std::int64_t value(std::int64_t i) const override { return parent_.at(sat_mul(2, i)); }
    std::string describe() const override { return "even(" + parent_.describe() + ")"; }

  private:
    RSequence parent_;
};

class QuotientThinnedRule final : public SequenceRule {
  public:
    QuotientThinnedRule(RSequence parent, std::int64_t d) : parent_(std::move(parent)), d_(d) {}

    std::int64_t value(std::int64_t j) const override { return parent_.at(sat_add(phase_start(j - 1), 1)); }

    /// i_j of the recurrence (saturating).
    std::int64_t phase_start(std::int64_t j) const {
        constexpr std::int64_t kIterationCap = 10'000'000;
        std::lock_guard lock(mu_);
        if (j >= kIterationCap) return kSaturated;
        while (static_cast<std::int64_t>(starts_.size()) <= j) {
            std::int64_t prev = starts_.back();
            if (prev >= kSaturated) return kSaturated;
            starts_.push_back(sat_add(sat_add(prev, sat_mul(d_, parent_.at(sat_add(prev, 1)))), 1));
        }
        return starts_[static_cast<std::size_t>(j)];
    }
    std::string describe() const override { return "quot" + std::to_string(d_) + "(" + parent_.describe() + ")"; }

  private:
    RSequence parent_;
    std::int64_t d_;
    mutable std::mutex mu_;
    mutable std::vector<std::int64_t> starts_{0};
};

} // namespace detail

inline RSequence RSequence::constant(std::int64_t c) {
    if (c < 1) throw std::invalid_argument("sequence values must be positive");
    return RSequence(std::make_shared<detail::ConstantRule>(c));
}

inline RSequence RSequence::geometric(double a, double b) {
    if (!(a > 0) || !(b >= 1)) throw std::invalid_argument("geometric sequence needs a > 0 and b >= 1");
    return RSequence(std::make_shared<detail::GeometricRule>(a, b));
}

inline RSequence RSequence::schedule(const EpsSchedule& s) { return RSequence(std::make_shared<detail::ScheduleRule>(s)); }

inline RSequence RSequence::with_prefix(std::vector<std::int64_t> prefix, RSequence rest) {
    for (auto v : prefix)
        if (v < 1) throw std::invalid_argument("sequence values must be positive");
    return RSequence(std::make_shared<detail::PrefixRule>(std::move(prefix), std::move(rest)));
}

inline RSequence RSequence::every_second() const { return RSequence(std::make_shared<detail::EverySecondRule>(*this)); }

inline RSequence RSequence::quotient_thinned(std::int64_t d) const {
    if (d < 1) throw std::invalid_argument("quotient thinning needs d >= 1");
    return RSequence(std::make_shared<detail::QuotientThinnedRule>(*this, d));
}

inline RSequence RSequence::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "const") return constant(std::stoll(rest));
        if (kind == "geom") {
            auto comma = rest.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("geom needs a,b");
            return geometric(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
        }
        if (kind == "schedule") {
            auto c2 = rest.find(':');
            if (c2 == std::string::npos) throw std::invalid_argument("schedule needs problem:k");
            return schedule(EpsSchedule(parse_problem(rest.substr(0, c2)), std::stoi(rest.substr(c2 + 1))));
        }
    } catch (const std::logic_error& e) {
        throw std::invalid_argument("bad sequence descriptor '" + text + "': " + e.what());
    }
    throw std::invalid_argument("unknown sequence descriptor '" + text + "'");
}

} // namespace baker
