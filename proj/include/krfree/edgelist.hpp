#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "krfree/graph.hpp"

namespace krf {

// Edge-list text format:
//   - optional header line  "p <n> <m>"
//   - one "u v" pair per line, whitespace separated
//   - comment lines start with '#', blank lines are skipped
// Vertex labels may be arbitrary tokens.  When every label is a decimal
// integer the identity labeling is used (n = header n, or max label + 1
// without a header), so isolated vertices are representable via the header.
// Otherwise labels are mapped to 0..n-1 in order of first appearance and a
// header n, if present, must match the number of distinct labels.

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct LabeledGraph {
    Graph graph;
    std::vector<std::string> labels; // labels[v] = original label of vertex v
};

inline LabeledGraph read_edge_list(std::istream& in) {
    struct RawEdge {
        std::string a, b;
        int line;
    };
    std::vector<RawEdge> raw;
    bool have_header = false;
    long long header_n = 0, header_m = 0;
    int header_line = 0;

    std::string line;
    int lineno = 0;
    bool all_integer = true;
    auto is_integer = [](const std::string& t) {
        if (t.empty())
            return false;
        for (char c : t)
            if (!std::isdigit((unsigned char)c))
                return false;
        return true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (tok[0] == '#')
            continue;
        if (tok == "p") {
            if (have_header)
                throw ParseError(lineno, "duplicate header");
            if (!raw.empty())
                throw ParseError(lineno, "header must precede edges");
            std::string extra;
            if (!(ls >> header_n >> header_m))
                throw ParseError(lineno, "expected \"p <n> <m>\"");
            if (ls >> extra)
                throw ParseError(lineno, "trailing tokens after header");
            if (header_n < 0 || header_m < 0)
                throw ParseError(lineno, "negative counts in header");
            have_header = true;
            header_line = lineno;
            continue;
        }
        std::string b, extra;
        if (!(ls >> b))
            throw ParseError(lineno, "expected two vertex labels");
        if (ls >> extra)
            throw ParseError(lineno, "trailing tokens after edge");
        if (tok == b)
            throw ParseError(lineno, "self-loop on vertex \"" + tok + "\"");
        all_integer = all_integer && is_integer(tok) && is_integer(b);
        raw.push_back({tok, b, lineno});
    }

    std::vector<std::string> labels;
    std::map<std::string, int> index;
    int n;
    if (all_integer) {
        long long max_label = -1;
        for (const auto& e : raw) {
            long long a = std::stoll(e.a), b = std::stoll(e.b);
            max_label = std::max({max_label, a, b});
        }
        long long needed = have_header ? header_n : max_label + 1;
        if (needed > KRF_MAX_VERTICES)
            throw ParseError(have_header ? header_line : 1,
                             "vertex count " + std::to_string(needed) + " exceeds cap");
        if (have_header && max_label >= header_n) {
            for (const auto& e : raw)
                if (std::stoll(e.a) >= header_n || std::stoll(e.b) >= header_n)
                    throw ParseError(e.line, "vertex label exceeds header n");
        }
        n = (int)needed;
        labels.reserve(n);
        for (int v = 0; v < n; ++v)
            labels.push_back(std::to_string(v));
        for (const auto& e : raw) {
            index.emplace(e.a, (int)std::stoll(e.a));
            index.emplace(e.b, (int)std::stoll(e.b));
        }
    } else {
        for (const auto& e : raw) {
            for (const std::string* t : {&e.a, &e.b}) {
                if (index.emplace(*t, (int)labels.size()).second)
                    labels.push_back(*t);
            }
        }
        if (have_header && header_n != (long long)labels.size())
            throw ParseError(header_line, "header n=" + std::to_string(header_n) +
                                              " does not match " +
                                              std::to_string(labels.size()) +
                                              " distinct labels");
        n = (int)labels.size();
    }

    Graph probe(n);
    std::vector<VertexSet> seen(n, VertexSet(n));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
        int u = index.at(e.a), v = index.at(e.b);
        if (seen[u].contains(v))
            throw ParseError(e.line, "duplicate edge \"" + e.a + " " + e.b + "\"");
        seen[u].insert(v);
        seen[v].insert(u);
        edges.emplace_back(u, v);
    }
    if (have_header && header_m != (long long)edges.size())
        throw ParseError(header_line, "header m=" + std::to_string(header_m) +
                                          " does not match " + std::to_string(edges.size()) +
                                          " edges");
    return {Graph(n, edges), std::move(labels)};
}

inline LabeledGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open \"" + path + "\"");
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>* labels = nullptr) {
    out << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) {
        if (labels)
            out << (*labels)[u] << " " << (*labels)[v] << "\n";
        else
            out << u << " " << v << "\n";
    }
}

inline void write_edge_list_file(const std::string& path, const Graph& g,
                                 const std::vector<std::string>* labels = nullptr) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write \"" + path + "\"");
    write_edge_list(out, g, labels);
}

} // namespace krf
