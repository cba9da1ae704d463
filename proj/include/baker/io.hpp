#pragma once

// Text formats.
//
//   graph:     p graph <n> <m>          embedding: p embed <n> <d> <beta>
//              e <u> <v>      (m lines)            c <v> <x1> ... <xd>
//              a <name> <v>   (optional)
//
// Blank lines and lines starting with '#' are ignored in both formats.

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "baker/graph.hpp"
#include "baker/layering.hpp"

namespace baker {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

inline OrderedGraph read_graph(std::istream& in) {
    std::string raw;
    int line_no = 0;
    int n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    std::vector<std::pair<std::string, Vertex>> notes;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "p") {
            std::string kind;
            if (n >= 0) throw ParseError(line_no, "duplicate header");
            if (!(ls >> kind >> n >> m) || kind != "graph" || n < 0 || m < 0)
                throw ParseError(line_no, "expected 'p graph <n> <m>'");
        } else if (tag == "e") {
            Vertex u, v;
            if (n < 0) throw ParseError(line_no, "edge before header");
            if (!(ls >> u >> v)) throw ParseError(line_no, "expected 'e <u> <v>'");
            if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "edge endpoint out of range");
            if (u == v) throw ParseError(line_no, "self-loop");
            edges.emplace_back(u, v);
        } else if (tag == "a") {
            std::string name;
            Vertex v;
            if (n < 0) throw ParseError(line_no, "annotation before header");
            if (!(ls >> name >> v)) throw ParseError(line_no, "expected 'a <name> <v>'");
            if (v < 0 || v >= n) throw ParseError(line_no, "annotation vertex out of range");
            notes.emplace_back(name, v);
        } else {
            throw ParseError(line_no, "unknown line type '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "trailing tokens");
    }
    if (n < 0) throw ParseError(line_no, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    OrderedGraph g;
    try {
        g = OrderedGraph::from_edges(n, edges);
    } catch (const GraphError& e) {
        throw ParseError(line_no, e.what());
    }
    for (const auto& [name, v] : notes) g.annotate(name, v);
    return g;
}

inline void write_graph(std::ostream& out, const OrderedGraph& g) {
    out << "p graph " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
    for (const auto& [name, set] : g.annotations())
        for (Vertex v : set) out << "a " << name << ' ' << v << '\n';
}

inline Embedding read_embedding(std::istream& in) {
    std::string raw;
    int line_no = 0;
    int n = -1;
    Embedding e;
    std::vector<char> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> n >> e.dim >> e.beta) || kind != "embed" || n < 0 || e.dim < 1)
                throw ParseError(line_no, "expected 'p embed <n> <d> <beta>'");
            e.coords.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(e.dim)));
            seen.assign(static_cast<std::size_t>(n), 0);
        } else if (tag == "c") {
            Vertex v;
            if (n < 0) throw ParseError(line_no, "coordinate before header");
            if (!(ls >> v) || v < 0 || v >= n) throw ParseError(line_no, "bad vertex");
            for (auto& x : e.coords[v])
                if (!(ls >> x)) throw ParseError(line_no, "expected " + std::to_string(e.dim) + " coordinates");
            seen[v] = 1;
        } else {
            throw ParseError(line_no, "unknown line type '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "trailing tokens");
    }
    if (n < 0) throw ParseError(line_no, "missing header");
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw ParseError(line_no, "no coordinates for vertex " + std::to_string(v));
    return e;
}

inline void write_embedding(std::ostream& out, const Embedding& e) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "p embed " << e.coords.size() << ' ' << e.dim << ' ' << e.beta << '\n';
    for (std::size_t v = 0; v < e.coords.size(); ++v) {
        out << "c " << v;
        for (double x : e.coords[v]) out << ' ' << x;
        out << '\n';
    }
}

} // namespace baker
