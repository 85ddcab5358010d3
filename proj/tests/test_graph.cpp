#include <catch2/catch_amalgamated.hpp>

#include "krfree/generators.hpp"
#include "krfree/graph.hpp"
#include "krfree/rng.hpp"

using namespace krf;

namespace {

// Seeded G(n, p)-style graph with p = num/den, for property tests.
Graph random_graph(int n, int num, int den, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((int)rng.below((std::uint64_t)den) < num)
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

} // namespace

TEST_CASE("graph construction invariants") {
    Graph g(4, {{0, 1}, {2, 3}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK(!g.adjacent(0, 2));
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 5}}), std::out_of_range);
    CHECK_NOTHROW(Graph(0));
}

TEST_CASE("min_degree") {
    CHECK(min_degree(cycle(5)) == 2);
    CHECK(min_degree(complete(4)) == 3);
    auto bu = blow_up(cycle(5), {10, 10, 10, 10, 10});
    REQUIRE(bu.graph.vertex_count() == 50);
    CHECK(min_degree(bu.graph) == 20);
    CHECK_THROWS_AS(min_degree(Graph(0)), std::invalid_argument);
}

TEST_CASE("common_neighborhood") {
    Graph k4 = complete(4);
    CHECK(common_neighborhood(k4, VertexSet::of(4, {0, 1})) == VertexSet::of(4, {2, 3}));
    Graph c5 = cycle(5);
    CHECK(common_neighborhood(c5, VertexSet::of(5, {0, 2})) == VertexSet::of(5, {1}));
    Graph k33 = complete_bipartite(3, 3);
    VertexSet same_side = VertexSet::of(6, {0, 1});
    CHECK(common_neighborhood(k33, same_side) == VertexSet::of(6, {3, 4, 5}));
    CHECK_THROWS_AS(common_neighborhood(k4, VertexSet(4)), std::invalid_argument);
}

TEST_CASE("density") {
    Graph k33 = complete_bipartite(3, 3);
    VertexSet left = VertexSet::of(6, {0, 1, 2});
    VertexSet right = VertexSet::of(6, {3, 4, 5});
    CHECK(density(k33, left, right) == Rational(1));
    Graph empty6(6);
    CHECK(density(empty6, left, right) == Rational(0));
    Graph c5 = cycle(5);
    // one edge (0-1) of two possible
    CHECK(density(c5, VertexSet::of(5, {0}), VertexSet::of(5, {1, 3})) == Rational(1, 2));
    CHECK(density(c5, VertexSet::of(5, {0}), VertexSet::of(5, {2, 3})) == Rational(0));
    CHECK_THROWS_AS(density(k33, left, left), std::invalid_argument);
    CHECK_THROWS_AS(density(k33, left, VertexSet(6)), std::invalid_argument);
}

TEST_CASE("edges_between symmetry and density range") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = random_graph(12, 1, 2, seed);
        Rng rng(seed + 100);
        VertexSet x(12), y(12);
        for (int v = 0; v < 12; ++v) {
            switch (rng.below(3)) {
            case 0: x.insert(v); break;
            case 1: y.insert(v); break;
            default: break;
            }
        }
        CHECK(edges_between(g, x, y) == edges_between(g, y, x));
        if (!x.empty() && !y.empty()) {
            Rational d = density(g, x, y);
            CHECK(Rational(0) <= d);
            CHECK(d <= Rational(1));
        }
    }
}

TEST_CASE("is_independent") {
    Graph c5 = cycle(5);
    CHECK(is_independent(c5, VertexSet::of(5, {0, 2})));
    CHECK(!is_independent(c5, VertexSet::of(5, {0, 1})));
    CHECK(is_independent(c5, VertexSet(5)));
}

TEST_CASE("induced_subgraph") {
    auto k3 = induced_subgraph(complete(5), VertexSet::of(5, {0, 2, 4}));
    CHECK(k3.graph == complete(3));
    CHECK(k3.vertices == std::vector<int>{0, 2, 4});

    auto path = induced_subgraph(cycle(5), VertexSet::of(5, {0, 1, 2}));
    CHECK(path.graph == Graph(3, {{0, 1}, {1, 2}}));

    auto bu = blow_up(cycle(5), {2, 2, 2, 2, 2});
    auto part = induced_subgraph(bu.graph, bu.parts.classes()[0]);
    CHECK(part.graph == Graph(2));

    CHECK_THROWS_AS(induced_subgraph(complete(3), VertexSet(3)), std::invalid_argument);
}

TEST_CASE("induced_subgraph preserves adjacency under the relabeling") {
    Graph g = random_graph(10, 2, 5, 7);
    VertexSet u = VertexSet::of(10, {1, 3, 4, 8, 9});
    auto sub = induced_subgraph(g, u);
    for (int a = 0; a < sub.graph.vertex_count(); ++a)
        for (int b = 0; b < sub.graph.vertex_count(); ++b)
            if (a != b)
                CHECK(sub.graph.adjacent(a, b) == g.adjacent(sub.vertices[a], sub.vertices[b]));
}

TEST_CASE("common neighborhood lower bound |N(U)| >= |U| delta - (|U|-1) n") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = random_graph(12, 3, 4, seed);
        long long n = g.vertex_count();
        long long delta = min_degree(g);
        std::vector<int> vs(12);
        for (int i = 0; i < 12; ++i)
            vs[i] = i;
        // all subsets U with 1 <= |U| <= 4
        for (unsigned mask = 1; mask < (1u << 12); ++mask) {
            int size = std::popcount(mask);
            if (size > 4)
                continue;
            VertexSet u(12);
            for (int i = 0; i < 12; ++i)
                if (mask & (1u << i))
                    u.insert(i);
            long long lhs = common_neighborhood(g, u).count();
            long long rhs = size * delta - (long long)(size - 1) * n;
            CHECK(lhs >= rhs);
        }
    }
}
