#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "krfree/cliques.hpp"
#include "krfree/graph.hpp"

namespace krf {

// Constructive verifiers for the structural facts that drive the extraction
// pipeline: the common-neighborhood lower bound for non-adjacent pairs in
// maximal K_r-free graphs, and the two greedy K_{r-2} finders (inside a
// common neighborhood avoiding a small set, and inside any sufficiently
// large vertex set).  The greedy steps are guaranteed to succeed when the
// minimum-degree hypothesis holds exactly; an exact backtracking fallback
// keeps the operations total on inputs that violate it, and a flag records
// when the fallback was needed.

struct CliqueWitness {
    VertexSet vertices;
    std::string context;
};

struct WitnessResult {
    std::optional<CliqueWitness> witness;
    bool greedy_stuck = false; // greedy emptied out; exact fallback was used

    bool found() const { return witness.has_value(); }
};

struct NonadjacentBound {
    long long common; // |N(u) cap N(v)|
    long long bound;  // r*delta(G) - (r-2)*n, may be negative

    bool holds() const { return common >= bound; }
};

namespace detail {

// Pick the lowest-index vertex of `candidates`, then repeatedly restrict to
// its neighborhood, `target` times.  Candidates are assumed to already
// exclude any avoided vertices; intersection can only shrink the set, so the
// exclusion is preserved.
inline std::optional<VertexSet> greedy_clique(const Graph& g, int target, VertexSet candidates) {
    VertexSet picked(g.vertex_count());
    for (int i = 0; i < target; ++i) {
        int v = candidates.first();
        if (v < 0)
            return std::nullopt;
        picked.insert(v);
        candidates &= g.neighbors(v);
    }
    return picked;
}

inline WitnessResult witness_in(const Graph& g, int size, const VertexSet& candidates,
                                std::string context) {
    if (auto w = greedy_clique(g, size, candidates))
        return {CliqueWitness{*w, std::move(context)}, false};
    if (auto w = find_clique(g, size, candidates))
        return {CliqueWitness{*w, std::move(context)}, true};
    return {std::nullopt, true};
}

inline void require_distinct_nonadjacent(const Graph& g, int u, int v) {
    if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("vertex out of range");
    if (u == v)
        throw std::invalid_argument("vertices must be distinct");
    if (g.adjacent(u, v))
        throw std::invalid_argument("vertices " + std::to_string(u) + " and " +
                                    std::to_string(v) + " are adjacent");
}

} // namespace detail

// |N(u) cap N(v)| together with the lower bound r*delta - (r-2)*n that holds
// for every non-adjacent pair of a maximal K_r-free graph.
inline NonadjacentBound check_nonadjacent_bound(const Graph& g, int r, int u, int v) {
    if (r < 3)
        throw std::invalid_argument("check_nonadjacent_bound: r must be >= 3");
    detail::require_distinct_nonadjacent(g, u, v);
    if (!is_maximal_krfree(g, r))
        throw std::invalid_argument("check_nonadjacent_bound: graph is not maximal K_" +
                                    std::to_string(r) + "-free");
    long long common = g.neighbors(u).intersection_count(g.neighbors(v));
    long long bound = (long long)r * min_degree(g) - (long long)(r - 2) * g.vertex_count();
    return {common, bound};
}

// K_{r-2} inside (N(u) cap N(v)) \ avoid for a non-adjacent pair u, v of a
// maximal K_r-free graph in F(r, eps), where |avoid| < eps * n.
inline WitnessResult find_kr2_avoiding(const Graph& g, int r, int u, int v,
                                       const VertexSet& avoid, const Rational& eps) {
    ThresholdParams params(r, eps);
    detail::require_distinct_nonadjacent(g, u, v);
    if (avoid.universe() != g.vertex_count())
        throw std::invalid_argument("find_kr2_avoiding: universe mismatch");
    if ((__int128)avoid.count() * eps.den() >= (__int128)eps.num() * g.vertex_count())
        throw std::invalid_argument("find_kr2_avoiding: |avoid| must be below eps*n");
    if (!is_maximal_krfree(g, r))
        throw std::invalid_argument("find_kr2_avoiding: graph is not maximal K_" +
                                    std::to_string(r) + "-free");
    if (!in_class_F(g, params))
        throw std::invalid_argument("find_kr2_avoiding: graph is not in F(r, eps)");
    VertexSet candidates = (g.neighbors(u) & g.neighbors(v)) - avoid;
    return detail::witness_in(g, r - 2, candidates,
                              "common neighborhood of " + std::to_string(u) + "," +
                                  std::to_string(v) + " minus avoided set");
}

// K_{r-2} inside any Z with |Z| >= ((2r-6)/(2r-3) + eps) * n, for a graph in
// F(r, eps).
inline WitnessResult find_kr2_in_set(const Graph& g, int r, const Rational& eps,
                                     const VertexSet& z) {
    ThresholdParams params(r, eps);
    if (z.universe() != g.vertex_count())
        throw std::invalid_argument("find_kr2_in_set: universe mismatch");
    const long long k = 2LL * r - 3;
    __int128 lhs = (__int128)z.count() * k * eps.den();
    __int128 rhs = ((__int128)(k - 3) * eps.den() + (__int128)eps.num() * k) * g.vertex_count();
    if (lhs < rhs)
        throw std::invalid_argument("find_kr2_in_set: |Z| below (2r-6)/(2r-3)+eps threshold");
    if (!in_class_F(g, params))
        throw std::invalid_argument("find_kr2_in_set: graph is not in F(r, eps)");
    return detail::witness_in(g, r - 2, z, "subset Z of size " + std::to_string(z.count()));
}

// Bulk runner used by the props CLI command and the acceptance suite: checks
// the maximality and class-membership preconditions once, then sweeps every
// non-adjacent pair (bound + avoiding-witness) and a canonical family of
// large sets (V and every vertex neighborhood).  Witnesses are re-verified
// from scratch by adjacency tests.
struct PropViolation {
    int u = -1, v = -1;
    long long common = 0, bound = 0;
};

struct PropSuiteResult {
    long long pairs_checked = 0;
    long long bound_violations = 0;
    std::optional<PropViolation> first_bound_violation;

    long long pair_witnesses = 0;
    long long pair_witness_failures = 0;
    long long pair_greedy_fallbacks = 0;
    std::optional<std::pair<int, int>> first_pair_failure;

    long long sets_checked = 0;
    long long set_witness_failures = 0;
    long long set_greedy_fallbacks = 0;
    std::optional<int> first_set_failure; // -1 means Z = V

    bool ok() const {
        return bound_violations == 0 && pair_witness_failures == 0 && set_witness_failures == 0;
    }
};

inline bool verify_clique_witness(const Graph& g, const VertexSet& claimed, int size,
                                  const VertexSet& host) {
    if (claimed.count() != size || !claimed.is_subset_of(host))
        return false;
    auto vs = claimed.to_vector();
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!g.adjacent(vs[i], vs[j]))
                return false;
    return true;
}

inline PropSuiteResult run_prop_suite(const Graph& g, const ThresholdParams& params,
                                      const VertexSet& avoid) {
    const int r = params.r;
    const int n = g.vertex_count();
    if (avoid.universe() != n)
        throw std::invalid_argument("run_prop_suite: universe mismatch");
    if ((__int128)avoid.count() * params.eps.den() >=
        (__int128)params.eps.num() * n)
        throw std::invalid_argument("run_prop_suite: |avoid| must be below eps*n");
    if (!is_maximal_krfree(g, r))
        throw std::invalid_argument("run_prop_suite: graph is not maximal K_" +
                                    std::to_string(r) + "-free");
    if (!in_class_F(g, params))
        throw std::invalid_argument("run_prop_suite: graph is not in F(r, eps)");

    PropSuiteResult res;
    const long long delta = min_degree(g);
    const long long bound = (long long)r * delta - (long long)(r - 2) * n;

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (g.adjacent(u, v))
                continue;
            ++res.pairs_checked;
            VertexSet common = g.neighbors(u) & g.neighbors(v);
            if (common.count() < bound) {
                ++res.bound_violations;
                if (!res.first_bound_violation)
                    res.first_bound_violation = PropViolation{u, v, common.count(), bound};
            }
            ++res.pair_witnesses;
            auto wr = detail::witness_in(g, r - 2, common - avoid, "");
            if (wr.greedy_stuck)
                ++res.pair_greedy_fallbacks;
            if (!wr.found() ||
                !verify_clique_witness(g, wr.witness->vertices, r - 2, common - avoid)) {
                ++res.pair_witness_failures;
                if (!res.first_pair_failure)
                    res.first_pair_failure = {u, v};
            }
        }

    // Z = V always meets the size threshold (eps <= 3/(2r-3)); every
    // neighborhood does as well since delta >= ((2r-5)/(2r-3)+eps) n.
    auto check_set = [&](const VertexSet& z, int tag) {
        ++res.sets_checked;
        auto wr = detail::witness_in(g, r - 2, z, "");
        if (wr.greedy_stuck)
            ++res.set_greedy_fallbacks;
        if (!wr.found() || !verify_clique_witness(g, wr.witness->vertices, r - 2, z)) {
            ++res.set_witness_failures;
            if (!res.first_set_failure)
                res.first_set_failure = tag;
        }
    };
    check_set(g.vertices(), -1);
    for (int v = 0; v < n; ++v)
        check_set(g.neighbors(v), v);
    return res;
}

} // namespace krf
