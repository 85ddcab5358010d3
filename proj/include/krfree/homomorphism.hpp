#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "krfree/cliques.hpp"
#include "krfree/graph.hpp"

namespace krf {

// Ordered list of disjoint nonempty vertex classes covering a stated ground
// set.  Construction validates the invariants once; afterwards the class
// index of any ground vertex is an O(1) lookup.
class Partition {
public:
    static Partition from_classes(int universe, std::vector<VertexSet> classes) {
        Partition p;
        p.ground_ = VertexSet(universe);
        p.member_class_.assign(universe, -1);
        for (size_t i = 0; i < classes.size(); ++i) {
            const VertexSet& c = classes[i];
            if (c.universe() != universe)
                throw std::invalid_argument("Partition: class universe mismatch");
            if (c.empty())
                throw std::invalid_argument("Partition: empty class " + std::to_string(i));
            if (c.intersects(p.ground_))
                throw std::invalid_argument("Partition: class " + std::to_string(i) +
                                            " overlaps an earlier class");
            p.ground_ |= c;
            c.for_each([&](int v) { p.member_class_[v] = (int)i; });
        }
        p.classes_ = std::move(classes);
        return p;
    }

    const std::vector<VertexSet>& classes() const { return classes_; }
    const VertexSet& ground() const { return ground_; }
    int size() const { return (int)classes_.size(); }

    // -1 for vertices outside the ground set.
    int class_of(int v) const { return member_class_.at(v); }

    bool covers(const Graph& g) const {
        return ground_.universe() == g.vertex_count() && ground_ == g.vertices();
    }

    bool operator==(const Partition& o) const {
        return classes_ == o.classes_ && ground_ == o.ground_;
    }

private:
    std::vector<VertexSet> classes_;
    VertexSet ground_;
    std::vector<int> member_class_;
};

// Total map V(G) -> V(H) claimed to preserve adjacency.
struct HomMap {
    Graph image;
    std::vector<int> map;
};

// True iff every edge of g maps to an edge of the image.  A non-total map is
// a caller error, not a "false".
inline bool verify_homomorphism(const Graph& g, const HomMap& hm) {
    if ((int)hm.map.size() != g.vertex_count())
        throw std::invalid_argument("verify_homomorphism: map is not total (size mismatch)");
    for (int img : hm.map)
        if (img < 0 || img >= hm.image.vertex_count())
            throw std::invalid_argument("verify_homomorphism: map value out of range");
    for (auto [u, v] : g.edges()) {
        int a = hm.map[u], b = hm.map[v];
        if (a == b || !hm.image.adjacent(a, b))
            return false;
    }
    return true;
}

struct QuotientResult {
    Graph quotient;
    HomMap hom;
};

// Quotient by a partition into independent classes: classes become vertices,
// two classes are adjacent iff any edge runs between them.  This is the
// least image that makes the class map a homomorphism; for partitions with
// the blow-up property it inverts the blow-up exactly.
inline QuotientResult quotient(const Graph& g, const Partition& p) {
    if (!p.covers(g))
        throw std::invalid_argument("quotient: partition does not cover the vertex set");
    for (int i = 0; i < p.size(); ++i) {
        const VertexSet& c = p.classes()[i];
        if (!is_independent(g, c)) {
            std::pair<int, int> witness{-1, -1};
            c.for_each([&](int u) {
                if (witness.first >= 0)
                    return;
                VertexSet inside = g.neighbors(u) & c;
                if (!inside.empty())
                    witness = {u, inside.first()};
            });
            throw std::invalid_argument("quotient: class " + std::to_string(i) +
                                        " is not independent (edge " +
                                        std::to_string(witness.first) + " " +
                                        std::to_string(witness.second) + ")");
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j)
            if (edges_between(g, p.classes()[i], p.classes()[j]) > 0)
                edges.emplace_back(i, j);
    Graph h(p.size(), edges);
    std::vector<int> map(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        map[v] = p.class_of(v);
    return {h, HomMap{h, std::move(map)}};
}

// True iff every class is independent and every class pair spans a complete
// or an empty bipartite graph.
inline bool is_blowup(const Graph& g, const Partition& p) {
    if (!p.covers(g))
        throw std::invalid_argument("is_blowup: partition does not cover the vertex set");
    for (const VertexSet& c : p.classes())
        if (!is_independent(g, c))
            return false;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) {
            long long e = edges_between(g, p.classes()[i], p.classes()[j]);
            long long full = (long long)p.classes()[i].count() * p.classes()[j].count();
            if (e != 0 && e != full)
                return false;
        }
    return true;
}

struct OracleResult {
    int k;
    Graph image;
    std::vector<int> map;
};

namespace detail {

struct OracleSearch {
    const Graph& g;
    int r, k;
    std::vector<VertexSet> classes;
    int used = 0;
    std::optional<OracleResult> result;

    OracleSearch(const Graph& g_, int r_, int k_) : g(g_), r(r_), k(k_) {
        classes.assign(k, VertexSet(g.vertex_count()));
    }

    bool leaf() {
        if (used != k)
            return false;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (edges_between(g, classes[i], classes[j]) > 0)
                    edges.emplace_back(i, j);
        Graph h(k, edges);
        if (!is_kr_free(h, r))
            return false;
        std::vector<int> map(g.vertex_count(), -1);
        for (int c = 0; c < k; ++c)
            classes[c].for_each([&](int v) { map[v] = c; });
        result = OracleResult{k, h, std::move(map)};
        return true;
    }

    // Restricted-growth enumeration: vertex v joins an existing class (if
    // independence allows) or opens the next one.  Pruning on independence
    // is what keeps the Bell-number space tractable on dense graphs.
    bool assign(int v) {
        if (v == g.vertex_count())
            return leaf();
        if (used + (g.vertex_count() - v) < k)
            return false; // cannot reach k nonempty classes anymore
        for (int c = 0; c < used; ++c) {
            if (g.neighbors(v).intersects(classes[c]))
                continue;
            classes[c].insert(v);
            if (assign(v + 1))
                return true;
            classes[c].erase(v);
        }
        if (used < k) {
            classes[used].insert(v);
            ++used;
            if (assign(v + 1))
                return true;
            --used;
            classes[used].erase(v);
        }
        return false;
    }
};

} // namespace detail

// Smallest k <= k_max admitting a partition of V(G) into k independent
// classes whose quotient is K_r-free, with a witness image and map; nullopt
// when no such k exists.  Independent oracle for the extraction pipeline;
// capped at n <= 14 because the search space is the Bell numbers.
inline std::optional<OracleResult> min_hom_image_bruteforce(const Graph& g, int r, int k_max) {
    if (g.vertex_count() < 1)
        throw std::invalid_argument("min_hom_image_bruteforce: empty graph");
    if (g.vertex_count() > 14)
        throw std::invalid_argument("min_hom_image_bruteforce: n > 14 is not supported");
    if (r < 3)
        throw std::invalid_argument("min_hom_image_bruteforce: r must be >= 3");
    if (k_max < 1)
        return std::nullopt;
    for (int k = 1; k <= std::min(k_max, g.vertex_count()); ++k) {
        detail::OracleSearch search(g, r, k);
        if (search.assign(0))
            return search.result;
    }
    return std::nullopt;
}

// Brute-force isomorphism for tiny graphs (acceptance checks only).
inline bool is_isomorphic_small(const Graph& a, const Graph& b) {
    if (a.vertex_count() > 8 || b.vertex_count() > 8)
        throw std::invalid_argument("is_isomorphic_small: supports at most 8 vertices");
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    const int n = a.vertex_count();
    auto degrees = [](const Graph& g) {
        std::vector<int> d(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            d[v] = g.degree(v);
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degrees(a) != degrees(b))
        return false;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v]))
                    ok = false;
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace krf
