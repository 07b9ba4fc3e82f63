#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "plsat/graph.hpp"
#include "plsat/planarity.hpp"

using namespace plsat;

namespace {

Graph complete(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(VertexKind::Variable);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g;
    for (int i = 0; i < a; ++i) g.add_vertex(VertexKind::Variable);
    for (int j = 0; j < b; ++j) g.add_vertex(VertexKind::ClauseV);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph petersen() {
    Graph g;
    for (int i = 0; i < 10; ++i) g.add_vertex(VertexKind::Variable);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);      // outer cycle
        g.add_edge(i, i + 5);            // spokes
        g.add_edge(i + 5, (i + 2) % 5 + 5);  // pentagram
    }
    return g;
}

// random planar graph built by construction: triangulation-ish stacking
Graph random_planar(std::mt19937_64& rng, int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(VertexKind::Variable);
    if (n >= 2) g.add_edge(0, 1);
    if (n >= 3) {
        g.add_edge(1, 2);
        g.add_edge(0, 2);
    }
    std::vector<std::array<int, 3>> faces{{0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        std::size_t pick = rng() % faces.size();
        auto face = faces[pick];
        faces[pick] = faces.back();
        faces.pop_back();
        for (int w : face) g.add_edge(v, w);
        faces.push_back({face[0], face[1], v});
        faces.push_back({face[1], face[2], v});
        faces.push_back({face[0], face[2], v});
    }
    // drop a random subset of edges; subgraphs of planar graphs stay planar
    Graph h;
    for (int i = 0; i < n; ++i) h.add_vertex(VertexKind::Variable);
    for (auto [a, b] : g.edge_list)
        if (rng() % 4 != 0) h.add_edge(a, b);
    return h;
}

}  // namespace

TEST_CASE("planarity fixtures") {
    PlanarityResult k4 = planarity_test(complete(4));
    REQUIRE(k4.planar);
    FaceTrace ft = trace_faces(complete(4), k4.rotation);
    CHECK(ft.faces == 4);  // Euler: 4 - 6 + f = 2
    CHECK(euler_check(complete(4), k4.rotation));

    PlanarityResult k5 = planarity_test(complete(5));
    REQUIRE_FALSE(k5.planar);
    CHECK(k5.kuratowski.size() >= 9);  // K5 subdivision has >= 10 edges, K3,3 >= 9

    PlanarityResult k33 = planarity_test(complete_bipartite(3, 3));
    REQUIRE_FALSE(k33.planar);
    CHECK_FALSE(k33.kuratowski.empty());

    PlanarityResult pet = planarity_test(petersen());
    CHECK_FALSE(pet.planar);
}

TEST_CASE("kuratowski witness edges form a subgraph of the input") {
    Graph k5 = complete(5);
    PlanarityResult res = planarity_test(k5);
    REQUIRE_FALSE(res.planar);
    for (auto [a, b] : res.kuratowski) CHECK(k5.has_edge(a, b));
}

TEST_CASE("incidence graph construction") {
    Formula f;
    f.num_vars = 3;
    f.add_clause({pos_lit(1), pos_lit(2), pos_lit(3)});
    IncidenceGraph ig = build_incidence_graph(f);
    CHECK(ig.g.n() == 4);
    CHECK(ig.g.m() == 3);

    // duplicate literal collapses to one edge
    Formula dup;
    dup.num_vars = 2;
    dup.add_clause({pos_lit(1), pos_lit(1), pos_lit(2)});
    CHECK(build_incidence_graph(dup).g.m() == 2);

    // basic gadget formula on {x, x'}: 4-cycle x - c - x' - c' - x
    Formula gad;
    gad.num_vars = 2;
    gad.add_clause({neg_lit(1), pos_lit(2)});
    gad.add_clause({pos_lit(1), neg_lit(2)});
    IncidenceGraph cyc = build_incidence_graph(gad);
    CHECK(cyc.g.n() == 4);
    CHECK(cyc.g.m() == 4);
    for (int u = 0; u < 4; ++u) CHECK(cyc.g.adj[u].size() == 2);

    Formula empty_clause;
    empty_clause.num_vars = 1;
    empty_clause.clauses.push_back(Clause{});
    CHECK_THROWS_AS(build_incidence_graph(empty_clause), std::invalid_argument);
}

TEST_CASE("union planar") {
    // 4-cycle incidence graph + kappa along the same cycle: union stays planar
    Formula gad;
    gad.num_vars = 2;
    gad.add_clause({neg_lit(1), pos_lit(2)});
    gad.add_clause({pos_lit(1), neg_lit(2)});
    IncidenceGraph cyc = build_incidence_graph(gad);
    CycleSpec same{{0, 2, 1, 3}};
    UnionPlanarity up = union_planar(cyc.g, {same});
    CHECK(up.result.planar);
    CHECK(up.shared_edges == 4);

    // star K1,3 + cycle through the leaves = K4: planar
    Graph star;
    star.add_vertex(VertexKind::ClauseV);
    for (int i = 0; i < 3; ++i) {
        star.add_vertex(VertexKind::Variable);
        star.add_edge(0, i + 1);
    }
    UnionPlanarity k4ish = union_planar(star, {CycleSpec{{1, 2, 3}}});
    CHECK(k4ish.result.planar);
    CHECK(k4ish.shared_edges == 0);

    // K3,3 plus any cycle stays non-planar
    Graph k33 = complete_bipartite(3, 3);
    UnionPlanarity bad = union_planar(k33, {CycleSpec{{0, 1, 2, 3, 4, 5}}});
    CHECK_FALSE(bad.result.planar);

    CHECK_THROWS_AS(union_planar(star, {CycleSpec{{1, 2, 99}}}), std::out_of_range);
    CHECK_THROWS_AS(union_planar(star, {CycleSpec{{1, 2}}}), std::invalid_argument);
}

TEST_CASE("euler check on every planar verdict, generated corpus") {
    std::mt19937_64 rng(11);
    int planar_count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_planar(rng, 4 + static_cast<int>(rng() % 30));
        PlanarityResult res = planarity_test(g);
        REQUIRE(res.planar);
        REQUIRE(euler_check(g, res.rotation));
        ++planar_count;
        // edge-count necessary condition m <= 3n - 6 for n >= 3
        if (g.n() >= 3) CHECK(g.m() <= 3 * g.n() - 6);
    }
    CHECK(planar_count == 200);
}

TEST_CASE("planar graphs plus K5 attachment become non-planar") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = random_planar(rng, 5 + static_cast<int>(rng() % 20));
        int base = g.n();
        for (int i = 0; i < 5; ++i) g.add_vertex(VertexKind::Variable);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) g.add_edge(base + i, base + j);
        g.add_edge(static_cast<int>(rng() % base), base);
        CHECK_FALSE(planarity_test(g).planar);
    }
}

TEST_CASE("graph interchange round trip") {
    Graph g = complete_bipartite(2, 3);
    std::ostringstream os;
    write_graph(os, g);
    std::istringstream is(os.str());
    Graph back = read_graph(is);
    CHECK(back.n() == g.n());
    CHECK(back.m() == g.m());
    CHECK(back.kind == g.kind);
}
