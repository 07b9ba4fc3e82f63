#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/formula.hpp"

namespace plsat {

enum class VertexKind { Variable, ClauseV };

// Simple undirected graph with typed vertices. Vertex ids are dense 0-based
// indices; for incidence graphs variable v sits at index v-1 and clause j at
// index num_vars + j.
struct Graph {
    std::vector<VertexKind> kind;
    std::vector<std::pair<int, int>> edge_list;          // a < b
    std::vector<std::vector<int>> adj;                   // neighbor lists
    std::map<std::pair<int, int>, bool> edge_set;

    int add_vertex(VertexKind k) {
        kind.push_back(k);
        adj.emplace_back();
        return static_cast<int>(kind.size()) - 1;
    }
    int n() const { return static_cast<int>(kind.size()); }
    int m() const { return static_cast<int>(edge_list.size()); }

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return edge_set.count({a, b}) != 0;
    }
    // Multiplicity collapses to 1.
    bool add_edge(int a, int b) {
        if (a == b) throw std::invalid_argument("self loop");
        if (a < 0 || b < 0 || a >= n() || b >= n()) throw std::out_of_range("edge endpoint");
        if (a > b) std::swap(a, b);
        if (edge_set.count({a, b})) return false;
        edge_set[{a, b}] = true;
        edge_list.push_back({a, b});
        adj[a].push_back(b);
        adj[b].push_back(a);
        return true;
    }
};

// Bipartite incidence graph of a formula: one vertex per variable, one per
// clause, an edge iff the variable occurs in the clause (multiplicity 1).
struct IncidenceGraph {
    Graph g;
    int num_vars = 0;
    int num_clauses = 0;

    int var_vertex(Var v) const { return v - 1; }
    int clause_vertex(int c) const { return num_vars + c; }
    bool is_var_vertex(int u) const { return u < num_vars; }
    Var vertex_var(int u) const { return u + 1; }
    int vertex_clause(int u) const { return u - num_vars; }
};

inline IncidenceGraph build_incidence_graph(const Formula& f) {
    if (f.has_empty_clause())
        throw std::invalid_argument("empty clause has no incidence-graph meaning");
    IncidenceGraph ig;
    ig.num_vars = f.num_vars;
    ig.num_clauses = static_cast<int>(f.clauses.size());
    for (int v = 0; v < f.num_vars; ++v) ig.g.add_vertex(VertexKind::Variable);
    for (std::size_t c = 0; c < f.clauses.size(); ++c) ig.g.add_vertex(VertexKind::ClauseV);
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (const Lit& l : f.clauses[c].lits)
            ig.g.add_edge(ig.var_vertex(l.var), ig.clause_vertex(static_cast<int>(c)));
    return ig;
}

// Cyclic edge order around every vertex; encodes a combinatorial embedding.
using RotationSystem = std::vector<std::vector<int>>;  // per vertex: ordered neighbors

// Traces the faces induced by a rotation system. Face count feeds the Euler
// check n - m + f = 1 + k. Each directed edge belongs to exactly one face.
struct FaceTrace {
    long faces = 0;
    std::vector<std::vector<std::pair<int, int>>> face_edges;  // directed edges per face
};

inline FaceTrace trace_faces(const Graph& g, const RotationSystem& rot) {
    FaceTrace ft;
    std::map<std::pair<int, int>, int> pos_in_rot;  // (u,v) -> index of v in rot[u]
    for (int u = 0; u < g.n(); ++u)
        for (std::size_t i = 0; i < rot[u].size(); ++i)
            pos_in_rot[{u, rot[u][i]}] = static_cast<int>(i);
    std::set<std::pair<int, int>> visited;
    for (int u = 0; u < g.n(); ++u) {
        for (int v : rot[u]) {
            if (visited.count({u, v})) continue;
            ft.face_edges.emplace_back();
            int a = u, b = v;
            while (!visited.count({a, b})) {
                visited.insert({a, b});
                ft.face_edges.back().push_back({a, b});
                // next directed edge: rotate at b from (b,a) to the next edge
                auto it = pos_in_rot.find({b, a});
                if (it == pos_in_rot.end()) throw std::logic_error("rotation system not symmetric");
                int idx = (it->second + 1) % static_cast<int>(rot[b].size());
                a = b;
                b = rot[b][idx];
            }
            ++ft.faces;
        }
    }
    return ft;
}

inline int count_components(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    int k = 0;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = k;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u])
                if (comp[w] == -1) {
                    comp[w] = k;
                    stack.push_back(w);
                }
        }
        ++k;
    }
    return k;
}

// Euler check for an embedding of a (possibly disconnected) graph:
// n - m + f = 1 + k with f the face count of a plane drawing. Tracing a
// rotation system yields one outer face per component; those merge into a
// single face when the components share the plane, so the traced count
// exceeds f by k - 1.
inline long plane_face_count(const Graph& g, const RotationSystem& rot) {
    long traced = trace_faces(g, rot).faces;
    long k = count_components(g);
    long edgeless = 0;  // an isolated vertex still owns its sphere face
    std::vector<bool> has_edge(g.n(), false);
    for (auto [a, b] : g.edge_list) has_edge[a] = has_edge[b] = true;
    {
        std::vector<int> comp(g.n(), -1);
        int c = 0;
        for (int s = 0; s < g.n(); ++s) {
            if (comp[s] != -1) continue;
            bool any_edge = false;
            std::vector<int> stack{s};
            comp[s] = c;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                any_edge = any_edge || has_edge[u];
                for (int w : g.adj[u])
                    if (comp[w] == -1) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            if (!any_edge) ++edgeless;
            ++c;
        }
    }
    return traced + edgeless - (k - 1);
}

inline bool euler_check(const Graph& g, const RotationSystem& rot) {
    long n = g.n(), m = g.m();
    if (n == 0) return true;
    long k = count_components(g);
    return n - m + plane_face_count(g, rot) == 1 + k;
}

// Edge-list interchange: `v <id>` / `c <id>` / `e <a> <b>` lines.
inline void write_graph(std::ostream& os, const Graph& g) {
    for (int u = 0; u < g.n(); ++u)
        os << (g.kind[u] == VertexKind::Variable ? "v " : "c ") << u << '\n';
    for (auto [a, b] : g.edge_list) os << "e " << a << ' ' << b << '\n';
}

inline Graph read_graph(std::istream& in) {
    Graph g;
    std::string line;
    int line_no = 0;
    std::map<int, int> id_map;
    std::vector<std::pair<int, int>> pending;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v" || tag == "c") {
            int id;
            if (!(ls >> id)) throw ParseError(line_no, "bad vertex line");
            if (id_map.count(id)) throw ParseError(line_no, "duplicate vertex id");
            id_map[id] = g.add_vertex(tag == "v" ? VertexKind::Variable : VertexKind::ClauseV);
        } else if (tag == "e") {
            int a, b;
            if (!(ls >> a >> b)) throw ParseError(line_no, "bad edge line");
            pending.push_back({a, b});
        } else {
            throw ParseError(line_no, "unknown line tag");
        }
    }
    for (auto [a, b] : pending) {
        if (!id_map.count(a) || !id_map.count(b))
            throw std::invalid_argument("edge references unknown vertex");
        g.add_edge(id_map[a], id_map[b]);
    }
    return g;
}

// Rotation systems serialized as per-vertex cyclic lists: `r <v>: n1 n2 ...`.
inline void write_rotation(std::ostream& os, const RotationSystem& rot) {
    for (std::size_t u = 0; u < rot.size(); ++u) {
        os << "r " << u << ':';
        for (int v : rot[u]) os << ' ' << v;
        os << '\n';
    }
}

}  // namespace plsat
