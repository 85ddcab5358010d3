#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "krfree/graph.hpp"
#include "krfree/rational.hpp"
#include "krfree/rng.hpp"

namespace krf {

// Parameters of the graph class F(r, eps): K_r-free graphs whose minimum
// degree is at least ((2r-5)/(2r-3) + eps) * n.  Values of eps above
// 2/(2r-3) would force the minimum degree past n, leaving the class empty,
// so they are rejected here instead of silently producing vacuous checks.
struct ThresholdParams {
    int r;
    Rational eps;

    ThresholdParams(int r_, Rational eps_) : r(r_), eps(eps_) {
        if (r < 3)
            throw std::invalid_argument("ThresholdParams: r must be >= 3");
        if (!eps.positive())
            throw std::invalid_argument("ThresholdParams: eps must be positive");
        if (Rational(2, 2LL * r - 3) < eps)
            throw std::invalid_argument("ThresholdParams: eps exceeds 2/(2r-3)");
    }

    // (2r-5)/(2r-3)
    Rational threshold_fraction() const { return Rational(2LL * r - 5, 2LL * r - 3); }
    // (2r-5)/(2r-3) + eps
    Rational degree_fraction() const { return threshold_fraction() + eps; }
};

namespace detail {

// Exact search for a clique of the given size inside `candidates`.
// Branches on the candidate with the fewest neighbors among the remaining
// candidates (fail-first); exploring the include branch before the exclude
// branch makes the returned witness deterministic.
inline bool clique_search(const std::vector<VertexSet>& rows, VertexSet candidates, int need,
                          std::vector<int>& acc) {
    while (true) {
        if (need == 0)
            return true;
        if (candidates.count() < need)
            return false;
        int pick = -1, pick_deg = -1;
        candidates.for_each([&](int v) {
            int d = rows[v].intersection_count(candidates);
            if (pick < 0 || d < pick_deg) {
                pick = v;
                pick_deg = d;
            }
        });
        if (clique_search(rows, candidates & rows[pick], need - 1, acc)) {
            acc.push_back(pick);
            return true;
        }
        candidates.erase(pick);
    }
}

inline std::optional<VertexSet> find_clique_rows(const std::vector<VertexSet>& rows, int n,
                                                 int size, const VertexSet& within) {
    if (size < 1)
        throw std::invalid_argument("find_clique: size must be >= 1");
    if (within.universe() != n)
        throw std::invalid_argument("find_clique: universe mismatch");
    std::vector<int> acc;
    if (!clique_search(rows, within, size, acc))
        return std::nullopt;
    return VertexSet::of(n, acc);
}

inline std::vector<VertexSet> copy_rows(const Graph& g) {
    std::vector<VertexSet> rows;
    rows.reserve(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        rows.push_back(g.neighbors(v));
    return rows;
}

} // namespace detail

inline std::optional<VertexSet> find_clique(const Graph& g, int size, const VertexSet& within) {
    return detail::find_clique_rows(detail::copy_rows(g), g.vertex_count(), size, within);
}

inline std::optional<VertexSet> find_clique(const Graph& g, int size) {
    return find_clique(g, size, g.vertices());
}

inline bool is_kr_free(const Graph& g, int r) {
    if (r < 1)
        throw std::invalid_argument("is_kr_free: r must be >= 1");
    if (r > g.vertex_count())
        return true;
    return !find_clique(g, r).has_value();
}

// A missing edge xy completes a K_r exactly when the common neighborhood of
// x and y contains a K_{r-2}.
inline bool is_maximal_krfree(const Graph& g, int r) {
    if (r < 3)
        throw std::invalid_argument("is_maximal_krfree: r must be >= 3");
    if (!is_kr_free(g, r))
        return false;
    auto rows = detail::copy_rows(g);
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (rows[u].contains(v))
                continue;
            if (!detail::find_clique_rows(rows, g.vertex_count(), r - 2, rows[u] & rows[v]))
                return false;
        }
    return true;
}

enum class EdgeOrder { lexicographic, random_seeded };

struct CompletionResult {
    Graph graph;
    std::vector<std::pair<int, int>> added;
};

// Greedy saturation: scan the non-edges in the chosen order and add each one
// that does not close a K_r.  An edge skipped once stays unsafe in every
// supergraph, so a single pass yields a maximal K_r-free graph.  Adding
// edges can only raise degrees, so membership in F(r, eps) is preserved.
inline CompletionResult maximal_krfree_completion(const Graph& g, int r,
                                                  EdgeOrder order = EdgeOrder::lexicographic,
                                                  std::uint64_t seed = 0) {
    if (r < 3)
        throw std::invalid_argument("maximal_krfree_completion: r must be >= 3");
    if (!is_kr_free(g, r))
        throw std::invalid_argument("maximal_krfree_completion: input already contains a K_" +
                                    std::to_string(r));
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve((size_t)n * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    if (order == EdgeOrder::random_seeded) {
        Rng rng(seed);
        auto perm = random_permutation((int)pairs.size(), rng);
        std::vector<std::pair<int, int>> shuffled;
        shuffled.reserve(pairs.size());
        for (int i : perm)
            shuffled.push_back(pairs[i]);
        pairs = std::move(shuffled);
    }

    auto rows = detail::copy_rows(g);
    std::vector<std::pair<int, int>> added;
    for (auto [u, v] : pairs) {
        if (rows[u].contains(v))
            continue;
        if (!detail::find_clique_rows(rows, n, r - 2, rows[u] & rows[v])) {
            rows[u].insert(v);
            rows[v].insert(u);
            added.emplace_back(u, v);
        }
    }
    std::vector<std::pair<int, int>> edges = g.edges();
    edges.insert(edges.end(), added.begin(), added.end());
    return {Graph(n, edges), std::move(added)};
}

// Exact membership test for F(r, eps): K_r-freeness plus the minimum-degree
// inequality delta * (2r-3) * q >= ((2r-5) q + p (2r-3)) * n with eps = p/q.
inline bool in_class_F(const Graph& g, const ThresholdParams& params) {
    if (g.vertex_count() == 0)
        return false;
    if (!is_kr_free(g, params.r))
        return false;
    const long long k = 2LL * params.r - 3;
    __int128 lhs = (__int128)min_degree(g) * k * params.eps.den();
    __int128 rhs = ((__int128)(k - 2) * params.eps.den() + (__int128)params.eps.num() * k) *
                   g.vertex_count();
    return lhs >= rhs;
}

} // namespace krf
