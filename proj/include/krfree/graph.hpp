#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "krfree/rational.hpp"
#include "krfree/vertex_set.hpp"

// Dense bit-row graphs are intersection-heavy by design: every higher-level
// operation (clique search, neighborhood equivalence, structure validation)
// reduces to word-parallel AND/popcount over adjacency rows.  The vertex
// count is capped so rows stay cache-friendly; override at build time if a
// larger cap is genuinely needed.
#ifndef KRF_MAX_VERTICES
#define KRF_MAX_VERTICES 4096
#endif

namespace krf {

// Immutable simple undirected graph on vertices 0..n-1.  Adjacency is
// symmetric with a zero diagonal; both are enforced at construction and no
// mutating operations exist, so graphs are safely shareable across threads.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(check_n(n)), adj_(n, VertexSet(n)) {}

    Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
        for (auto [u, v] : edges)
            add_edge_checked(u, v);
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        return adj_[u].contains(v);
    }

    const VertexSet& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return neighbors(v).count(); }

    VertexSet vertices() const { return VertexSet::full_set(n_); }

    // Edges as sorted (u, v) pairs with u < v.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve((size_t)m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v)
                    out.emplace_back(u, v);
            });
        return out;
    }

    bool operator==(const Graph& o) const = default;

private:
    static int check_n(int n) {
        if (n < 0)
            throw std::invalid_argument("Graph: negative vertex count");
        if (n > KRF_MAX_VERTICES)
            throw std::invalid_argument("Graph: vertex count " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(KRF_MAX_VERTICES));
        return n;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
    }

    void add_edge_checked(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        if (adj_[u].contains(v))
            throw std::invalid_argument("Graph: duplicate edge " + std::to_string(u) + " " +
                                        std::to_string(v));
        adj_[u].insert(v);
        adj_[v].insert(u);
        ++m_;
    }

    int n_ = 0;
    std::vector<VertexSet> adj_;
    long long m_ = 0;
};

inline int min_degree(const Graph& g) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("min_degree: graph has no vertices");
    int best = g.degree(0);
    for (int v = 1; v < g.vertex_count(); ++v)
        best = std::min(best, g.degree(v));
    return best;
}

// N(U) = intersection of the neighborhoods of all vertices of u.  The empty
// intersection is rejected rather than defined as V.
inline VertexSet common_neighborhood(const Graph& g, const VertexSet& u) {
    if (u.universe() != g.vertex_count())
        throw std::invalid_argument("common_neighborhood: universe mismatch");
    int v0 = u.first();
    if (v0 < 0)
        throw std::invalid_argument("common_neighborhood: empty vertex set");
    VertexSet acc = g.neighbors(v0);
    u.for_each([&](int v) {
        if (v != v0)
            acc &= g.neighbors(v);
    });
    return acc;
}

// Number of x-y edges.  For disjoint sets this is e(X, Y); callers that pass
// overlapping sets get ordered-pair counts and are on their own.
inline long long edges_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
    if (x.universe() != g.vertex_count() || y.universe() != g.vertex_count())
        throw std::invalid_argument("edges_between: universe mismatch");
    long long e = 0;
    x.for_each([&](int u) { e += g.neighbors(u).intersection_count(y); });
    return e;
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count())
        throw std::invalid_argument("is_independent: universe mismatch");
    bool ok = true;
    s.for_each([&](int u) {
        if (ok && g.neighbors(u).intersects(s))
            ok = false;
    });
    return ok;
}

// Exact density e(X, Y) / (|X| |Y|) for disjoint nonempty X, Y.
inline Rational density(const Graph& g, const VertexSet& x, const VertexSet& y) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("density: X and Y must be nonempty");
    if (x.intersects(y))
        throw std::invalid_argument("density: X and Y must be disjoint");
    return Rational(edges_between(g, x, y), (long long)x.count() * y.count());
}

struct InducedSubgraph {
    Graph graph;
    // vertices[i] is the original id of induced vertex i (ascending order).
    std::vector<int> vertices;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& u) {
    if (u.universe() != g.vertex_count())
        throw std::invalid_argument("induced_subgraph: universe mismatch");
    if (u.empty())
        throw std::invalid_argument("induced_subgraph: empty vertex set");
    std::vector<int> old_ids = u.to_vector();
    std::vector<int> new_id(g.vertex_count(), -1);
    for (size_t i = 0; i < old_ids.size(); ++i)
        new_id[old_ids[i]] = (int)i;
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < old_ids.size(); ++i) {
        VertexSet nb = g.neighbors(old_ids[i]) & u;
        nb.for_each([&](int w) {
            if (old_ids[i] < w)
                edges.emplace_back((int)i, new_id[w]);
        });
    }
    return {Graph((int)old_ids.size(), edges), std::move(old_ids)};
}

} // namespace krf
