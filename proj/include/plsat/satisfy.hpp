#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "plsat/count.hpp"
#include "plsat/graph.hpp"
#include "plsat/planarity.hpp"

namespace plsat {

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail_satisfy {

// polarity of the edge (v, c): +1 all-positive occurrences, -1 all-negative,
// 0 mixed (the variable occurs with both signs in the clause)
inline int edge_polarity(const Clause& c, Var v) {
    bool any_pos = false, any_neg = false;
    for (const Lit& l : c.lits)
        if (l.var == v) (l.neg ? any_neg : any_pos) = true;
    if (any_pos && any_neg) return 0;
    return any_pos ? 1 : -1;
}

// DSATUR-ordered exact backtracking 4-coloring with a one-shot Kempe-chain
// swap attempted before giving up on a vertex.
struct FourColoring {
    const Graph& g;
    std::vector<int> color;

    explicit FourColoring(const Graph& graph) : g(graph), color(graph.n(), -1) {}

    int saturation(int u) const {
        std::set<int> seen;
        for (int w : g.adj[u])
            if (color[w] >= 0) seen.insert(color[w]);
        return static_cast<int>(seen.size());
    }

    int pick_vertex() const {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int u = 0; u < g.n(); ++u) {
            if (color[u] >= 0) continue;
            int sat = saturation(u);
            int deg = static_cast<int>(g.adj[u].size());
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = u;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    }

    bool admissible(int u, int c) const {
        for (int w : g.adj[u])
            if (color[w] == c) return false;
        return true;
    }

    // Kempe chain: swap colors a/b on the component of `start` in the a/b
    // subgraph. Always sound for proper colorings.
    void kempe_swap(int start, int a, int b) {
        std::vector<int> stack{start};
        std::set<int> seen{start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u])
                if ((color[w] == a || color[w] == b) && !seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        for (int u : seen) color[u] = color[u] == a ? b : a;
    }

    bool try_kempe(int u) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                // free color a at u by recoloring one a-neighbor's chain
                for (int w : g.adj[u]) {
                    if (color[w] != a) continue;
                    std::vector<int> saved = color;
                    kempe_swap(w, a, b);
                    if (admissible(u, a)) {
                        color[u] = a;
                        return true;
                    }
                    color = std::move(saved);
                }
            }
        return false;
    }

    bool solve() {
        int u = pick_vertex();
        if (u < 0) return true;
        for (int c = 0; c < 4; ++c) {
            if (!admissible(u, c)) continue;
            color[u] = c;
            if (solve()) return true;
            color[u] = -1;
        }
        if (try_kempe(u)) {
            if (solve()) return true;
            color[u] = -1;
        }
        return false;
    }
};

}  // namespace detail_satisfy

struct FourColorCertificate {
    Assignment assignment;
    std::vector<int> colors;                        // per variable vertex
    std::vector<std::array<Var, 3>> triangles;      // chosen monotone triple per clause
};

// Constructive satisfier for planar formulas in which every clause has at
// least three all-negated or three all-unnegated distinct variables whose
// edges are consecutive in the clause's rotation: add a triangle through such
// a triple per clause, drop the clause vertices, 4-color the variable graph,
// set colors {0,1} true.
inline FourColorCertificate four_color_satisfy(const Formula& f, const IncidenceGraph& ig,
                                               const RotationSystem& rot) {
    using namespace detail_satisfy;
    FourColorCertificate cert;
    cert.assignment = Assignment(f.num_vars);
    Graph vg;
    for (int v = 0; v < f.num_vars; ++v) vg.add_vertex(VertexKind::Variable);
    for (std::size_t cj = 0; cj < f.clauses.size(); ++cj) {
        const Clause& c = f.clauses[cj];
        int cv = ig.clause_vertex(static_cast<int>(cj));
        const std::vector<int>& around = rot[cv];
        int d = static_cast<int>(around.size());
        if (d < 3)
            throw PreconditionViolated("clause lacks three distinct monotone occurrences");
        std::optional<std::array<Var, 3>> triple;
        for (int i = 0; i < d && !triple; ++i) {
            Var a = ig.vertex_var(around[i]);
            Var b = ig.vertex_var(around[(i + 1) % d]);
            Var cc = ig.vertex_var(around[(i + 2) % d]);
            if (a == b || b == cc || a == cc) continue;
            int pa = edge_polarity(c, a), pb = edge_polarity(c, b), pc = edge_polarity(c, cc);
            if (pa != 0 && pa == pb && pb == pc) triple = std::array<Var, 3>{a, b, cc};
        }
        if (!triple) throw PreconditionViolated("clause lacks a consecutive monotone triple");
        cert.triangles.push_back(*triple);
        auto [a, b, cc] = *triple;
        vg.add_edge(a - 1, b - 1);
        vg.add_edge(b - 1, cc - 1);
        vg.add_edge(a - 1, cc - 1);
    }
    if (!planarity_test(vg).planar)
        throw std::logic_error("triangle-augmented variable graph is not planar; embedding bug");
    FourColoring coloring(vg);
    if (!coloring.solve())
        throw std::logic_error("4-coloring search exhausted on a planar graph; embedding bug");
    cert.colors = coloring.color;
    for (Var v = 1; v <= f.num_vars; ++v) cert.assignment.set(v, coloring.color[v - 1] <= 1);
    return cert;
}

// Hopcroft-Karp maximum bipartite matching; left side 0..nl-1, right side
// indices into its own range.
struct HopcroftKarp {
    int nl, nr;
    std::vector<std::vector<int>> adj;  // left -> right neighbors
    std::vector<int> match_l, match_r, dist;

    HopcroftKarp(int left, int right)
        : nl(left), nr(right), adj(left), match_l(left, -1), match_r(right, -1), dist(left) {}

    void add_edge(int l, int r) { adj[l].push_back(r); }

    bool bfs() {
        std::queue<int> q;
        bool reachable_free = false;
        for (int u = 0; u < nl; ++u) {
            dist[u] = match_l[u] == -1 ? 0 : -1;
            if (dist[u] == 0) q.push(u);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int r : adj[u]) {
                int w = match_r[r];
                if (w == -1) {
                    reachable_free = true;
                } else if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int r : adj[u]) {
            int w = match_r[r];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = r;
                match_r[r] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }

    int run() {
        int matching = 0;
        while (bfs())
            for (int u = 0; u < nl; ++u)
                if (match_l[u] == -1 && dfs(u)) ++matching;
        return matching;
    }
};

struct MatchingCertificate {
    Assignment assignment;
    std::vector<Var> representative;  // per clause: the matched variable
};

// Thm: planar CNF with >= 4 distinct variables per clause is satisfiable; a
// matching covering the clauses assigns each clause a distinct representative
// whose literal is set true. Unmatched variables default to false.
inline MatchingCertificate matching_satisfy(const Formula& f) {
    IncidenceGraph ig = build_incidence_graph(f);
    if (!planarity_test(ig.g).planar)
        throw PreconditionViolated("matching satisfier requires a planar incidence graph");
    for (const Clause& c : f.clauses) {
        std::set<Var> distinct;
        for (const Lit& l : c.lits) distinct.insert(l.var);
        if (distinct.size() < 4)
            throw PreconditionViolated("matching satisfier requires >= 4 distinct variables");
    }
    int m = static_cast<int>(f.clauses.size());
    HopcroftKarp hk(m, f.num_vars);
    for (int cj = 0; cj < m; ++cj) {
        std::set<Var> distinct;
        for (const Lit& l : f.clauses[cj].lits) distinct.insert(l.var);
        for (Var v : distinct) hk.add_edge(cj, v - 1);
    }
    int covered = hk.run();
    if (covered != m)
        throw PreconditionViolated("matching does not cover all clauses; input violates Lemma 11");
    MatchingCertificate cert;
    cert.assignment = Assignment(f.num_vars);
    cert.representative.resize(m);
    // default false; set each clause's matched literal true
    for (int cj = 0; cj < m; ++cj) {
        Var v = hk.match_l[cj] + 1;
        cert.representative[cj] = v;
        bool occurs_pos = false;
        for (const Lit& l : f.clauses[cj].lits)
            if (l.var == v && !l.neg) occurs_pos = true;
        cert.assignment.set(v, occurs_pos);
    }
    return cert;
}

struct SubgraphStats {
    long b_vars = 0;    // |B'|
    long c_clauses = 0; // |C'|
    long edges = 0;     // |E'|
    long faces = 0;     // |F'| in the plane
    long components = 0;
    bool euler_exact = false;
    bool eq1 = false;  // 2|E'| >= 4|F'|
    bool eq2 = false;  // 2|B'| + 2|C'| - 2 - 2k >= |E'|
    bool eq3 = false;  // |C'| <= |B'| - 1 - k
    bool all_hold() const { return euler_exact && eq1 && eq2 && eq3; }
};

// Evaluates the Hall-condition inequalities of Lemma 11 on the subgraph
// induced by a clause subset and its neighborhood, using the embedding
// restricted to that subgraph.
inline SubgraphStats hall_check(const IncidenceGraph& ig, const RotationSystem& rot,
                                const std::vector<int>& clause_subset) {
    for (int c : clause_subset)
        if (c < 0 || c >= ig.num_clauses) throw std::out_of_range("hall_check: clause index");
    std::set<int> cset(clause_subset.begin(), clause_subset.end());
    std::set<int> keep;  // vertex ids of the induced subgraph
    for (int c : cset) {
        keep.insert(ig.clause_vertex(c));
        for (int w : ig.g.adj[ig.clause_vertex(c)]) keep.insert(w);
    }
    std::map<int, int> remap;
    Graph sub;
    RotationSystem sub_rot;
    for (int u : keep) {
        remap[u] = sub.add_vertex(ig.g.kind[u]);
        sub_rot.emplace_back();
    }
    for (int u : keep) {
        for (int w : rot[u]) {
            if (!keep.count(w)) continue;
            // induced edges are exactly those incident to the clause subset
            bool u_clause = !ig.is_var_vertex(u) && cset.count(ig.vertex_clause(u));
            bool w_clause = !ig.is_var_vertex(w) && cset.count(ig.vertex_clause(w));
            if (!u_clause && !w_clause) continue;
            sub_rot[remap[u]].push_back(remap[w]);
            if (remap[u] < remap[w]) sub.add_edge(remap[u], remap[w]);
        }
    }
    SubgraphStats st;
    for (int u : keep)
        (ig.is_var_vertex(u) ? st.b_vars : st.c_clauses)++;
    st.edges = sub.m();
    st.components = count_components(sub);
    st.faces = plane_face_count(sub, sub_rot);
    st.euler_exact = st.b_vars + st.c_clauses - st.edges + st.faces == 1 + st.components;
    FaceTrace ft = trace_faces(sub, sub_rot);
    long degree_sum = 0;
    bool min_face_ok = true;
    for (const auto& face : ft.face_edges) {
        degree_sum += static_cast<long>(face.size());
        if (face.size() < 4) min_face_ok = false;
    }
    st.eq1 = degree_sum == 2 * st.edges && min_face_ok && 2 * st.edges >= 4 * st.faces;
    st.eq2 = 2 * st.b_vars + 2 * st.c_clauses - 2 - 2 * st.components >= st.edges;
    st.eq3 = st.c_clauses <= st.b_vars - 1 - st.components;
    return st;
}

}  // namespace plsat
