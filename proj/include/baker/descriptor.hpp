#pragma once

// Strategy descriptors:
//
//   edgeless | chordal:<d> | minorfree:<k> | distortion
//   | cliquesum(<s1>,<s2>[,<b>]) | quotient(<s>,<d>)
//
// A descriptor is built against a concrete graph. minorfree and quotient
// reorder the graph by a geodesic partition, so they may only appear
// outermost. The clique-sum base is the prefix of the first b vertices
// (default: the first half).

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "baker/decomposition.hpp"
#include "baker/strategy.hpp"

namespace baker {

class DescriptorError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The graph is outside the class the descriptor asks for.
class ClassViolation : public std::runtime_error {
  public:
    explicit ClassViolation(const std::string& what, std::optional<MinorWitness> w = std::nullopt)
        : std::runtime_error(what), witness(std::move(w)) {}
    std::optional<MinorWitness> witness;
};

struct Descriptor {
    enum class Kind { Edgeless, Chordal, MinorFree, Distortion, CliqueSum, Quotient };
    Kind kind = Kind::Edgeless;
    int param = 0; // d, k, b (-1: default) or quotient width
    std::vector<Descriptor> children;

    std::string describe() const {
        switch (kind) {
        case Kind::Edgeless: return "edgeless";
        case Kind::Chordal: return "chordal:" + std::to_string(param);
        case Kind::MinorFree: return "minorfree:" + std::to_string(param);
        case Kind::Distortion: return "distortion";
        case Kind::CliqueSum:
            return "cliquesum(" + children[0].describe() + "," + children[1].describe() +
                   (param >= 0 ? "," + std::to_string(param) : "") + ")";
        case Kind::Quotient: return "quotient(" + children[0].describe() + "," + std::to_string(param) + ")";
        }
        return {};
    }

    bool reorders() const { return kind == Kind::MinorFree || kind == Kind::Quotient; }
};

namespace detail {

class DescriptorParser {
  public:
    explicit DescriptorParser(std::string text) : s_(std::move(text)) {}

    Descriptor parse() {
        Descriptor d = node();
        if (pos_ != s_.size()) fail("trailing input");
        return d;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw DescriptorError("strategy descriptor '" + s_ + "' at " + std::to_string(pos_) + ": " + what);
    }

    std::string word() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    int number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 6) fail("expected a small non-negative integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) return ++pos_, true;
        return false;
    }

    Descriptor node() {
        Descriptor d;
        std::string w = word();
        if (w == "edgeless") {
            d.kind = Descriptor::Kind::Edgeless;
        } else if (w == "distortion") {
            d.kind = Descriptor::Kind::Distortion;
        } else if (w == "chordal" || w == "minorfree") {
            d.kind = w == "chordal" ? Descriptor::Kind::Chordal : Descriptor::Kind::MinorFree;
            expect(':');
            d.param = number();
            if (d.kind == Descriptor::Kind::MinorFree && d.param < 3) fail("minorfree needs k >= 3");
        } else if (w == "cliquesum") {
            d.kind = Descriptor::Kind::CliqueSum;
            expect('(');
            ++depth_;
            d.children.push_back(node());
            expect(',');
            d.children.push_back(node());
            --depth_;
            d.param = accept(',') ? number() : -1;
            expect(')');
        } else if (w == "quotient") {
            d.kind = Descriptor::Kind::Quotient;
            expect('(');
            ++depth_;
            d.children.push_back(node());
            --depth_;
            expect(',');
            d.param = number();
            if (d.param < 1) fail("quotient needs d >= 1");
            expect(')');
        } else {
            fail("unknown strategy '" + w + "'");
        }
        if (d.reorders() && depth_ > 0) fail(w + " must be outermost");
        return d;
    }

    std::string s_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

} // namespace detail

inline Descriptor parse_descriptor(const std::string& text) { return detail::DescriptorParser(text).parse(); }

/// A strategy ready to play on `graph`. `order[i]` is the input vertex that
/// became vertex i (the identity unless the descriptor reorders).
struct BuiltStrategy {
    OrderedGraph graph;
    std::vector<Vertex> order;
    std::optional<Embedding> embedding;
    std::unique_ptr<Strategy> strategy;
};

namespace detail {

inline std::unique_ptr<Strategy> build_inner(const Descriptor& d, const OrderedGraph& g, const Embedding* e) {
    using K = Descriptor::Kind;
    switch (d.kind) {
    case K::Edgeless:
        if (g.m() > 0) throw ClassViolation("edgeless strategy on a graph with edges");
        return strategy_edgeless();
    case K::Chordal: {
        auto c = check_chordal_ordering(g);
        if (!c.chordal)
            throw ClassViolation("ordering is not chordal at vertex " + std::to_string(c.witness));
        if (c.max_left_degree > d.param)
            throw ClassViolation("left-degree " + std::to_string(c.max_left_degree) + " exceeds " +
                                 std::to_string(d.param));
        return strategy_chordal(d.param);
    }
    case K::Distortion:
        if (!e) throw DescriptorError("distortion strategy needs an embedding");
        try {
            return strategy_distortion(g, *e);
        } catch (const GraphError& err) {
            throw ClassViolation(std::string("embedding rejected: ") + err.what());
        }
    case K::CliqueSum: {
        int b = d.param >= 0 ? std::min(d.param, g.n()) : (g.n() + 1) / 2;
        std::vector<Vertex> base(static_cast<std::size_t>(b));
        for (int i = 0; i < b; ++i) base[i] = i;
        std::vector<Vertex> rest;
        for (int i = b; i < g.n(); ++i) rest.push_back(i);
        std::optional<Embedding> sub;
        if (e) {
            sub = *e;
            sub->coords.resize(static_cast<std::size_t>(b));
        }
        StrategyPrototype s1 = build_inner(d.children[0], g.induced(base), sub ? &*sub : nullptr);
        StrategyPrototype s2 = build_inner(d.children[1], g.induced(rest), nullptr);
        return strategy_cliquesum(std::move(s1), std::move(s2), std::move(base));
    }
    default: throw DescriptorError(d.describe() + " must be outermost");
    }
}

} // namespace detail

/// Builds the strategy for `g`. Throws ClassViolation (with a minor witness
/// when one is found) if g is outside the class.
inline BuiltStrategy build_strategy(const Descriptor& d, const OrderedGraph& g, const Embedding* e = nullptr) {
    BuiltStrategy out;
    if (!d.reorders()) {
        out.graph = g;
        out.order.resize(static_cast<std::size_t>(g.n()));
        for (int i = 0; i < g.n(); ++i) out.order[i] = i;
        if (e) out.embedding = *e;
        out.strategy = detail::build_inner(d, g, e);
        return out;
    }
    const int width = d.kind == Descriptor::Kind::MinorFree ? d.param - 2 : d.param;
    Descriptor inner = d.kind == Descriptor::Kind::MinorFree ? Descriptor{Descriptor::Kind::Chordal, width, {}} : d.children[0];
    auto r = chordal_geodesic_partition(g, width + 2);
    if (auto* w = std::get_if<MinorWitness>(&r))
        throw ClassViolation("graph has a K_" + std::to_string(width + 2) + " minor", std::move(*w));
    auto& op = std::get<OrderedPartition>(r);
    StrategyPrototype s = detail::build_inner(inner, op.partition.quotient, nullptr);
    out.strategy = strategy_quotient(std::move(s), op.graph, op.partition, width);
    out.graph = std::move(op.graph);
    out.order = std::move(op.order);
    return out;
}

inline BuiltStrategy build_strategy(const std::string& text, const OrderedGraph& g, const Embedding* e = nullptr) {
    return build_strategy(parse_descriptor(text), g, e);
}

} // namespace baker
