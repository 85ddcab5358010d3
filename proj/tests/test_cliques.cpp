#include <catch2/catch_amalgamated.hpp>

#include "krfree/cliques.hpp"
#include "krfree/generators.hpp"
#include "krfree/rng.hpp"

using namespace krf;

namespace {

Graph random_graph(int n, int num, int den, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((int)rng.below((std::uint64_t)den) < num)
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Exhaustive k-subset check, the oracle for find_clique.
bool has_clique_exhaustive(const Graph& g, int k) {
    const int n = g.vertex_count();
    if (k > n)
        return false;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i)
        pick[i] = i;
    while (true) {
        bool clique = true;
        for (int i = 0; i < k && clique; ++i)
            for (int j = i + 1; j < k && clique; ++j)
                if (!g.adjacent(pick[i], pick[j]))
                    clique = false;
        if (clique)
            return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i)
            --i;
        if (i < 0)
            return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

bool is_clique(const Graph& g, const VertexSet& s) {
    auto vs = s.to_vector();
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!g.adjacent(vs[i], vs[j]))
                return false;
    return true;
}

// Independent re-simulation of the lexicographic completion greedy, using
// exhaustive clique checks instead of the library's search.
Graph simulate_lex_completion(const Graph& g, int r) {
    Graph cur = g;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (cur.adjacent(u, v))
                continue;
            auto edges = cur.edges();
            edges.emplace_back(u, v);
            Graph with(g.vertex_count(), edges);
            if (!has_clique_exhaustive(with, r))
                cur = with;
        }
    return cur;
}

} // namespace

TEST_CASE("find_clique examples") {
    CHECK(find_clique(complete(4), 4) == VertexSet::of(4, {0, 1, 2, 3}));
    CHECK(!find_clique(cycle(5), 3).has_value());
    Graph t12 = turan(12, 3);
    CHECK(!find_clique(t12, 4).has_value());
    auto triple = find_clique(t12, 3);
    REQUIRE(triple.has_value());
    CHECK(is_clique(t12, *triple));
    CHECK_THROWS_AS(find_clique(complete(3), 0), std::invalid_argument);
}

TEST_CASE("find_clique restricted to a subset") {
    Graph k5 = complete(5);
    VertexSet within = VertexSet::of(5, {1, 3});
    auto c = find_clique(k5, 2, within);
    REQUIRE(c.has_value());
    CHECK(c->is_subset_of(within));
    CHECK(!find_clique(k5, 3, within).has_value());
}

TEST_CASE("find_clique agrees with exhaustive enumeration") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Graph g = random_graph(10, 3, 5, seed);
        for (int k = 1; k <= 6; ++k) {
            auto found = find_clique(g, k);
            CHECK(found.has_value() == has_clique_exhaustive(g, k));
            if (found)
                CHECK(is_clique(g, *found));
        }
    }
}

TEST_CASE("is_kr_free") {
    CHECK(is_kr_free(cycle(5), 3));
    CHECK(!is_kr_free(complete(4), 4));
    CHECK(is_kr_free(complete(4), 5));
    CHECK(is_kr_free(Graph(0), 3));
}

TEST_CASE("completion leaves maximal graphs unchanged") {
    // C_5: every chord creates a triangle.
    auto r = maximal_krfree_completion(cycle(5), 3);
    CHECK(r.graph == cycle(5));
    CHECK(r.added.empty());
    // K_{3,3}: any added edge closes a triangle through the opposite side.
    auto r2 = maximal_krfree_completion(complete_bipartite(3, 3), 3);
    CHECK(r2.graph == complete_bipartite(3, 3));
}

TEST_CASE("completion of the empty graph matches the greedy simulation") {
    auto r = maximal_krfree_completion(Graph(4), 3);
    CHECK(r.graph == simulate_lex_completion(Graph(4), 3));
    // Lexicographic order admits 01, 02, 03 before any pair of leaves can be
    // joined, so the result is the star at vertex 0.
    CHECK(r.graph == Graph(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(is_maximal_krfree(r.graph, 3));
}

TEST_CASE("completion matches the simulation on random inputs") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = random_graph(9, 1, 4, seed);
        if (!is_kr_free(g, 3))
            continue;
        CHECK(maximal_krfree_completion(g, 3).graph == simulate_lex_completion(g, 3));
    }
}

TEST_CASE("completion postconditions and idempotence") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = random_graph(14, 1, 5, seed);
        for (int r = 3; r <= 4; ++r) {
            if (!is_kr_free(g, r))
                continue;
            auto res = maximal_krfree_completion(g, r);
            CHECK(is_kr_free(res.graph, r));
            CHECK(is_maximal_krfree(res.graph, r));
            for (auto [u, v] : g.edges())
                CHECK(res.graph.adjacent(u, v));
            auto again = maximal_krfree_completion(res.graph, r);
            CHECK(again.graph == res.graph);
            CHECK(again.added.empty());
        }
    }
    CHECK_THROWS_AS(maximal_krfree_completion(complete(3), 3), std::invalid_argument);
}

TEST_CASE("random-order completion is seeded and reproducible") {
    Graph g(6);
    auto a = maximal_krfree_completion(g, 3, EdgeOrder::random_seeded, 42);
    auto b = maximal_krfree_completion(g, 3, EdgeOrder::random_seeded, 42);
    CHECK(a.graph == b.graph);
    CHECK(is_maximal_krfree(a.graph, 3));
}

TEST_CASE("is_maximal_krfree") {
    CHECK(is_maximal_krfree(cycle(5), 3));
    CHECK(!is_maximal_krfree(Graph(4), 3));
    CHECK(!is_maximal_krfree(complete(4), 3)); // not even K_3-free
    CHECK(is_maximal_krfree(turan(9, 3), 4));
    CHECK(is_maximal_krfree(andrasfai(3), 3));
}

TEST_CASE("in_class_F membership") {
    auto bu = blow_up(cycle(5), {10, 10, 10, 10, 10});
    CHECK(in_class_F(bu.graph, ThresholdParams(3, Rational(1, 15))));
    CHECK(!in_class_F(bu.graph, ThresholdParams(3, Rational(1, 14))));
    CHECK(!in_class_F(complete(4), ThresholdParams(4, Rational(1, 100))));
    CHECK(!in_class_F(Graph(0), ThresholdParams(3, Rational(1, 15))));
}

TEST_CASE("threshold parameter guards") {
    CHECK_THROWS_AS(ThresholdParams(2, Rational(1, 15)), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdParams(3, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdParams(3, Rational(-1, 15)), std::invalid_argument);
    // eps above 2/(2r-3) leaves the class empty
    CHECK_THROWS_AS(ThresholdParams(3, Rational(3, 4)), std::invalid_argument);
    CHECK_NOTHROW(ThresholdParams(3, Rational(2, 3)));
    CHECK(ThresholdParams(4, Rational(1, 40)).threshold_fraction() == Rational(3, 5));
    CHECK(ThresholdParams(3, Rational(1, 15)).degree_fraction() == Rational(2, 5));
}
