#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "krfree/cliques.hpp"
#include "krfree/graph.hpp"
#include "krfree/homomorphism.hpp"

namespace krf {

// Deterministic constructors for the test families: cycles, complete and
// complete multipartite graphs, blow-ups with their ground-truth partition,
// joins, Andrasfai and Kneser graphs, and the joined blow-ups K_{r-3} v H.

inline Graph cycle(int k) {
    if (k < 3)
        throw std::invalid_argument("cycle: need k >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        edges.emplace_back(i, (i + 1) % k);
    return Graph(k, edges);
}

inline Graph complete(int k) {
    if (k < 0)
        throw std::invalid_argument("complete: negative size");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            edges.emplace_back(i, j);
    return Graph(k, edges);
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            edges.emplace_back(i, a + j);
    return Graph(a + b, edges);
}

struct BlowUp {
    Graph graph;
    Partition parts; // ground truth: part i replaces pattern vertex i
};

// Replace vertex i of the pattern by an independent set of sizes[i] vertices
// (numbered consecutively) and every pattern edge by a complete bipartite
// graph.
inline BlowUp blow_up(const Graph& h, const std::vector<int>& sizes) {
    if ((int)sizes.size() != h.vertex_count())
        throw std::invalid_argument("blow_up: sizes length must equal pattern order");
    long long n = 0;
    std::vector<int> offset(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1)
            throw std::invalid_argument("blow_up: part sizes must be >= 1");
        offset[i] = (int)n;
        n += sizes[i];
    }
    if (n > KRF_MAX_VERTICES)
        throw std::invalid_argument("blow_up: result exceeds vertex cap");
    std::vector<std::pair<int, int>> edges;
    for (auto [x, y] : h.edges())
        for (int i = 0; i < sizes[x]; ++i)
            for (int j = 0; j < sizes[y]; ++j)
                edges.emplace_back(offset[x] + i, offset[y] + j);
    Graph g((int)n, edges);
    std::vector<VertexSet> classes;
    for (size_t i = 0; i < sizes.size(); ++i) {
        VertexSet c((int)n);
        for (int j = 0; j < sizes[i]; ++j)
            c.insert(offset[i] + j);
        classes.push_back(std::move(c));
    }
    return {std::move(g), Partition::from_classes((int)n, std::move(classes))};
}

// Disjoint union plus all cross edges; g keeps its vertex ids, h is shifted.
inline Graph join(const Graph& g, const Graph& h) {
    int n = g.vertex_count() + h.vertex_count();
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto [u, v] : h.edges())
        edges.emplace_back(g.vertex_count() + u, g.vertex_count() + v);
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = 0; v < h.vertex_count(); ++v)
            edges.emplace_back(u, g.vertex_count() + v);
    return Graph(n, edges);
}

// Complete multipartite graph with balanced parts (sizes differ by at most
// one; larger parts first).
inline Graph turan(int n, int parts) {
    if (parts < 1 || n < parts)
        throw std::invalid_argument("turan: need 1 <= parts <= n");
    std::vector<int> sizes(parts, n / parts);
    for (int i = 0; i < n % parts; ++i)
        ++sizes[i];
    return blow_up(complete(parts), sizes).graph;
}

// Cayley graph on Z_{3k-1} with connection set {k, ..., 2k-1}: the standard
// family of k-regular maximal triangle-free graphs.  And(1) = K_2,
// And(2) = C_5.
inline Graph andrasfai(int k) {
    if (k < 1)
        throw std::invalid_argument("andrasfai: need k >= 1");
    int n = 3 * k - 1;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int d = v - u;
            if (d >= k && d <= 2 * k - 1)
                edges.emplace_back(u, v);
        }
    return Graph(n, edges);
}

// Vertices are the k-subsets of {0..n-1} in lexicographic order, adjacent
// when disjoint.  kneser(5, 2) is the Petersen graph.
inline Graph kneser(int n, int k) {
    if (k < 1 || n < k)
        throw std::invalid_argument("kneser: need 1 <= k <= n");
    std::vector<unsigned> subsets;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i)
        pick[i] = i;
    while (true) {
        unsigned mask = 0;
        for (int i : pick)
            mask |= 1u << i;
        subsets.push_back(mask);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    if ((long long)subsets.size() > KRF_MAX_VERTICES)
        throw std::invalid_argument("kneser: result exceeds vertex cap");
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < subsets.size(); ++i)
        for (size_t j = i + 1; j < subsets.size(); ++j)
            if ((subsets[i] & subsets[j]) == 0)
                edges.emplace_back((int)i, (int)j);
    return Graph((int)subsets.size(), edges);
}

// Blow-up of K_{r-3} v h.  sizes lists the r-3 clique-side part sizes first,
// then one size per pattern vertex.  For r = 3 this is a plain blow-up of h.
inline BlowUp goddard_lyle(int r, const Graph& h, const std::vector<int>& sizes) {
    if (r < 3)
        throw std::invalid_argument("goddard_lyle: r must be >= 3");
    if ((int)sizes.size() != (r - 3) + h.vertex_count())
        throw std::invalid_argument("goddard_lyle: sizes length must be (r-3) + |V(h)|");
    return blow_up(join(complete(r - 3), h), sizes);
}

// Uniform part sizes (a on the clique side, b on the pattern side) that put
// the blow-up of K_{r-3} v h into F(r, eps), minimizing the total vertex
// count; nullopt when no sizes up to max_n work.  All checks are exact.
inline std::optional<std::vector<int>> goddard_lyle_sizes(int r, const Graph& h,
                                                          const Rational& eps,
                                                          int max_n = 512) {
    ThresholdParams params(r, eps); // validates r and eps
    if (h.vertex_count() == 0)
        return std::nullopt;
    if (!is_kr_free(join(complete(r - 3), h), r))
        return std::nullopt; // any blow-up would contain K_r
    const int hn = h.vertex_count();
    const int hd = min_degree(h);
    const long long p = eps.num(), q = eps.den();
    const long long k = 2LL * r - 3;
    auto meets = [&](long long delta, long long n) {
        return (__int128)delta * k * q >= ((__int128)(k - 2) * q + (__int128)p * k) * n;
    };
    auto make_sizes = [&](int a, int b) {
        std::vector<int> s;
        for (int i = 0; i < r - 3; ++i)
            s.push_back(a);
        for (int i = 0; i < hn; ++i)
            s.push_back(b);
        return s;
    };
    if (r == 3) {
        // Scale-free: the ratio delta(h)/|V(h)| either meets the bound or not.
        if (meets(hd, hn))
            return make_sizes(0, 1);
        return std::nullopt;
    }
    for (int n = 1; n <= max_n; ++n)
        for (int a = 1; (r - 3) * a + hn <= n; ++a) {
            long long rest = n - (long long)(r - 3) * a;
            if (rest % hn != 0)
                continue;
            int b = (int)(rest / hn);
            long long apex_deg = (long long)(r - 4) * a + (long long)hn * b;
            long long pattern_deg = (long long)(r - 3) * a + (long long)hd * b;
            if (meets(std::min(apex_deg, pattern_deg), n))
                return make_sizes(a, b);
        }
    return std::nullopt;
}

} // namespace krf
