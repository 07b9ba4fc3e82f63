#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>

#include <set>
#include <stdexcept>
#include <vector>

#include "plsat/graph.hpp"

namespace plsat {

namespace detail {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

inline void reindex_edges(BoostGraph& bg) {
    auto e_index = boost::get(boost::edge_index, bg);
    int count = 0;
    for (auto [ei, ei_end] = boost::edges(bg); ei != ei_end; ++ei)
        boost::put(e_index, *ei, count++);
}

inline BoostGraph to_boost(const Graph& g) {
    BoostGraph bg(g.n());
    for (auto [a, b] : g.edge_list) boost::add_edge(a, b, bg);
    reindex_edges(bg);
    return bg;
}

}  // namespace detail

struct PlanarityResult {
    bool planar = false;
    RotationSystem rotation;                        // valid iff planar
    std::vector<std::pair<int, int>> kuratowski;    // edges of a K5/K3,3 subdivision otherwise
};

// Boyer–Myrvold test; on success the returned rotation system is a planar
// embedding (Euler face-count check passes), on failure the witness is a
// Kuratowski subdivision.
inline PlanarityResult planarity_test(const Graph& g) {
    PlanarityResult res;
    detail::BoostGraph bg = detail::to_boost(g);
    using Edge = boost::graph_traits<detail::BoostGraph>::edge_descriptor;
    std::vector<std::vector<Edge>> embedding(g.n());
    std::vector<Edge> kura;
    res.planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = embedding.data(),
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kura));
    if (res.planar) {
        res.rotation.assign(g.n(), {});
        for (int u = 0; u < g.n(); ++u)
            for (const Edge& e : embedding[u]) {
                int a = static_cast<int>(boost::source(e, bg));
                int b = static_cast<int>(boost::target(e, bg));
                res.rotation[u].push_back(a == u ? b : a);
            }
    } else {
        for (const Edge& e : kura)
            res.kuratowski.push_back({static_cast<int>(boost::source(e, bg)),
                                      static_cast<int>(boost::target(e, bg))});
    }
    return res;
}

struct CycleSpec {
    std::vector<int> vertices;  // closed walk, all distinct, length >= 3
};

inline void validate_cycle(const Graph& g, const CycleSpec& cyc) {
    if (cyc.vertices.size() < 3) throw std::invalid_argument("cycle shorter than 3");
    std::set<int> seen;
    for (int v : cyc.vertices) {
        if (v < 0 || v >= g.n()) throw std::out_of_range("unknown vertex id in cycle");
        if (!seen.insert(v).second) throw std::invalid_argument("repeated vertex in cycle");
    }
}

struct UnionPlanarity {
    PlanarityResult result;
    int shared_edges = 0;  // cycle edges already present in the base graph
};

// Planarity of g plus the given cycles. Cycle edges already present in g are
// not duplicated (the union stays simple); their count is reported so the
// validator can flag instances sharing more than two edges with kappa.
inline UnionPlanarity union_planar(const Graph& g, const std::vector<CycleSpec>& extra) {
    Graph u = g;
    int shared = 0;
    for (const CycleSpec& cyc : extra) {
        validate_cycle(g, cyc);
        for (std::size_t i = 0; i < cyc.vertices.size(); ++i) {
            int a = cyc.vertices[i];
            int b = cyc.vertices[(i + 1) % cyc.vertices.size()];
            if (!u.add_edge(a, b)) ++shared;
        }
    }
    return UnionPlanarity{planarity_test(u), shared};
}

}  // namespace plsat
