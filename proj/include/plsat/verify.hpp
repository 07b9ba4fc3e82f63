#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plsat/count.hpp"
#include "plsat/linked.hpp"
#include "plsat/planarity.hpp"
#include "plsat/reduction.hpp"

namespace plsat {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const CheckResult& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
    void add(std::string name, CheckStatus st, std::string detail = "") {
        checks.push_back({std::move(name), st, std::move(detail)});
    }
};

inline void write_report(std::ostream& os, const VerificationReport& rep) {
    for (const CheckResult& c : rep.checks) {
        os << "check " << c.name << ' '
           << (c.status == CheckStatus::Pass ? "pass"
               : c.status == CheckStatus::Fail ? "fail"
                                               : "skip");
        if (!c.detail.empty()) os << ' ' << c.detail;
        os << '\n';
    }
}

// Exact wiring sanity of the column layout: every incidence edge joins
// adjacent columns and no two edges of a strip interleave.
inline bool layout_strips_ok(const LinkedInstance& li, std::string* why = nullptr) {
    IncidenceGraph ig = build_incidence_graph(li.formula);
    std::map<int, std::vector<std::pair<int, int>>> strips;  // left column -> (rank_l, rank_r)
    for (auto [a, b] : ig.g.edge_list) {
        int ca = li.vertex_column[a], cb = li.vertex_column[b];
        if (ca > cb) {
            std::swap(ca, cb);
            std::swap(a, b);
        }
        if (cb - ca != 1) {
            if (why) *why = "edge spans non-adjacent columns";
            return false;
        }
        strips[ca].push_back({li.vertex_rank[a], li.vertex_rank[b]});
    }
    for (auto& [col, edges] : strips)
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                auto [a1, b1] = edges[i];
                auto [a2, b2] = edges[j];
                if (a1 == a2 || b1 == b2) continue;  // shared endpoint
                if ((a1 < a2) != (b1 < b2)) {
                    if (why) *why = "strip " + std::to_string(col) + " edges interleave";
                    return false;
                }
            }
    return true;
}

// Rotation system of the union graph G + kappa derived from the column
// layout: counterclockwise around every vertex, the kappa edge upward, then
// left-strip edges by neighbor rank descending, the kappa edge downward,
// then right-strip edges ascending. Kappa arcs leave clause columns at the
// top and enter at the bottom; variable columns the other way around.
struct UnionEmbedding {
    Graph graph;  // incidence graph plus kappa edges
    RotationSystem rotation;
    int shared_with_incidence = 0;
};

inline UnionEmbedding linked_union_embedding(const LinkedInstance& li) {
    UnionEmbedding ue;
    IncidenceGraph ig = build_incidence_graph(li.formula);
    ue.graph = ig.g;
    CycleSpec kappa = li.kappa_cycle();
    const std::size_t len = kappa.vertices.size();
    auto col = [&](int u) { return li.vertex_column[u]; };
    auto rank = [&](int u) { return li.vertex_rank[u]; };
    auto is_clause_vertex = [&](int u) { return u >= li.formula.num_vars; };
    std::vector<int> up(ue.graph.n(), -1), down(ue.graph.n(), -1);
    for (std::size_t i = 0; i < len; ++i) {
        int u = kappa.vertices[i];
        int w = kappa.vertices[(i + 1) % len];
        if (!ue.graph.add_edge(u, w)) ++ue.shared_with_incidence;
        if (col(u) == col(w)) {
            (rank(w) > rank(u) ? up : down)[u] = w;
            (rank(u) > rank(w) ? up : down)[w] = u;
        } else {
            // arc: kappa_C exits upward / enters from below, kappa_V exits
            // downward / enters from above; the two bridges follow the same
            // rule at their endpoints
            (is_clause_vertex(u) ? up : down)[u] = w;
            (is_clause_vertex(w) ? down : up)[w] = u;
        }
    }
    ue.rotation.assign(ue.graph.n(), {});
    for (int u = 0; u < ue.graph.n(); ++u) {
        std::vector<int> left, right;
        for (int w : ig.g.adj[u]) {
            if (w == up[u] || w == down[u]) continue;  // shared with kappa
            (col(w) < col(u) ? left : right).push_back(w);
        }
        std::sort(left.begin(), left.end(), [&](int x, int y) { return rank(x) > rank(y); });
        std::sort(right.begin(), right.end(), [&](int x, int y) { return rank(x) < rank(y); });
        std::vector<int>& r = ue.rotation[u];
        if (up[u] >= 0) r.push_back(up[u]);
        for (int w : left) r.push_back(w);
        if (down[u] >= 0) r.push_back(down[u]);
        for (int w : right) r.push_back(w);
    }
    return ue;
}

namespace detail_verify {

inline int edge_polarity(const Clause& c, Var v) {
    bool any_pos = false, any_neg = false;
    for (const Lit& l : c.lits)
        if (l.var == v) (l.neg ? any_neg : any_pos) = true;
    if (any_pos && any_neg) return 0;
    return any_pos ? 1 : -1;
}

}  // namespace detail_verify

struct SideSeparationResult {
    bool pass = false;
    std::string detail;
};

// Checks that every clause's positive-occurrence edges leave kappa on one
// side and the negated ones on the other, consistently across all clauses.
// Kappa edges coinciding with incidence edges lie on the cycle itself and
// are exempt (Definition 1 allows up to two shared edges).
inline SideSeparationResult check_side_separation(const LinkedInstance& li) {
    UnionEmbedding ue = linked_union_embedding(li);
    if (!euler_check(ue.graph, ue.rotation))
        return {false, "embedding missing: union rotation fails the Euler check"};
    CycleSpec kappa = li.kappa_cycle();
    const std::size_t len = kappa.vertices.size();
    std::set<std::pair<int, int>> on_kappa;
    std::map<int, std::pair<int, int>> kappa_nbrs;  // vertex -> (prev, next)
    for (std::size_t i = 0; i < len; ++i) {
        int a = kappa.vertices[i], b = kappa.vertices[(i + 1) % len];
        on_kappa.insert({std::min(a, b), std::max(a, b)});
        kappa_nbrs[a].second = b;
        kappa_nbrs[b].first = a;
    }
    int global_side = 0;  // +1 when positive occurrences sit left of directed kappa
    for (int cj = 0; cj < li.num_clauses(); ++cj) {
        int cv = li.clause_vertex(cj);
        const std::vector<int>& rot = ue.rotation[cv];
        auto [prev, next] = kappa_nbrs.at(cv);
        int pos_next = -1, pos_prev = -1;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            if (rot[i] == next) pos_next = static_cast<int>(i);
            if (rot[i] == prev) pos_prev = static_cast<int>(i);
        }
        if (pos_next < 0 || pos_prev < 0) return {false, "kappa neighbor missing in rotation"};
        int size = static_cast<int>(rot.size());
        for (int w : rot) {
            if (w == next || w == prev) continue;
            if (w >= li.formula.num_vars) return {false, "clause adjacent to a clause vertex"};
            if (on_kappa.count({std::min(cv, w), std::max(cv, w)})) continue;
            Var v = w + 1;
            int pol = detail_verify::edge_polarity(li.formula.clauses[cj], v);
            if (pol == 0)
                return {false, "variable occurs with both signs in clause " + std::to_string(cj)};
            int dist_w = -1, dist_prev = -1;
            for (int step = 1; step < size; ++step) {
                int at = (pos_next + step) % size;
                if (rot[at] == w && dist_w < 0) dist_w = step;
                if (at == pos_prev && dist_prev < 0) dist_prev = step;
            }
            int side = dist_w < dist_prev ? 1 : -1;  // left of the directed cycle
            int oriented = pol > 0 ? side : -side;
            if (global_side == 0) global_side = oriented;
            if (oriented != global_side)
                return {false, "clause " + std::to_string(cj) + " variable " + std::to_string(v) +
                                   " on the wrong side"};
        }
    }
    return {true, "consistent; positive side is " +
                      std::string(global_side >= 0 ? "left" : "right") + " of kappa"};
}

// Full validator: kappa order, union planarity, variant constraints,
// equisatisfiability, parsimony with the variant's multiplier, size report.
inline VerificationReport verify_linked(const LinkedInstance& li, const Formula& original,
                                        GadgetKind variant) {
    VerificationReport rep;
    {
        bool ok = static_cast<int>(li.kappa_clauses.size()) == li.num_clauses() &&
                  static_cast<int>(li.kappa_vars.size()) == li.num_vars();
        std::set<int> cs(li.kappa_clauses.begin(), li.kappa_clauses.end());
        std::set<Var> vs(li.kappa_vars.begin(), li.kappa_vars.end());
        ok = ok && static_cast<int>(cs.size()) == li.num_clauses() &&
             static_cast<int>(vs.size()) == li.num_vars();
        for (int c : li.kappa_clauses) ok = ok && c >= 0 && c < li.num_clauses();
        for (Var v : li.kappa_vars) ok = ok && v >= 1 && v <= li.num_vars();
        rep.add("kappa-order", ok ? CheckStatus::Pass : CheckStatus::Fail);
        if (!ok) return rep;
    }
    {
        IncidenceGraph ig = build_incidence_graph(li.formula);
        if (ig.g.n() >= 3) {
            UnionPlanarity up = union_planar(ig.g, {li.kappa_cycle()});
            std::string detail = "shared-kappa-edges " + std::to_string(up.shared_edges);
            if (up.shared_edges > 2) detail += " (warning: more than two)";
            rep.add("union-planarity", up.result.planar ? CheckStatus::Pass : CheckStatus::Fail,
                    detail);
        } else {
            rep.add("union-planarity", CheckStatus::Skip, "fewer than three vertices");
        }
    }
    {
        ClassFlags out_flags = classify(li.formula);
        ClassFlags in_flags = classify(original);
        bool ok = out_flags.is_3sat;
        std::string detail;
        switch (variant) {
            case GadgetKind::Basic:
                break;
            case GadgetKind::OneInThree:
                ok = ok && out_flags.positive && out_flags.exactly_three_distinct;
                break;
            case GadgetKind::ThreeDistinct:
                if (in_flags.exactly_three_distinct) ok = ok && out_flags.exactly_three_distinct;
                break;
            case GadgetKind::Monotone:
                ok = ok && out_flags.monotone;
                break;
            case GadgetKind::SideCycle:
                ok = ok && out_flags.max_occurrence <= 3;
                detail = "max-occurrence " + std::to_string(out_flags.max_occurrence);
                break;
            default:
                break;
        }
        rep.add("variant-constraints", ok ? CheckStatus::Pass : CheckStatus::Fail, detail);
    }
    Semantics sem = variant == GadgetKind::OneInThree ? Semantics::OneInThree : Semantics::Cnf;
    if (original.num_vars <= kBruteForceVarCap) {
        bool in_sat = brute_solve(original, sem).has_value();
        bool out_sat = exact_satisfiable(li.formula, sem);
        rep.add("equisatisfiability", in_sat == out_sat ? CheckStatus::Pass : CheckStatus::Fail,
                in_sat ? "sat" : "unsat");
    } else {
        rep.add("equisatisfiability", CheckStatus::Skip, "original exceeds the brute-force cap");
    }
    if (original.num_vars <= kBruteForceVarCap) {
        if (variant == GadgetKind::OneInThree) {
            // per-gadget multiplier is 1 when the carried value is true and 2
            // when false; check the exact weighted identity instead
            std::map<Var, int> gadgets_per_var;
            for (const GadgetRecord& g : li.prov.gadgets) gadgets_per_var[g.orig_var]++;
            unsigned long long expected = 0;
            Assignment a(original.num_vars);
            for (std::uint64_t mask = 0; mask < (1ull << original.num_vars); ++mask) {
                for (Var v = 1; v <= original.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
                if (!evaluate(original, a, sem)) continue;
                unsigned long long weight = 1;
                for (auto [v, cnt] : gadgets_per_var)
                    if (!a[v]) weight <<= cnt;
                expected += weight;
            }
            unsigned long long actual = exact_count(li.formula, sem);
            rep.add("parsimony", expected == actual ? CheckStatus::Pass : CheckStatus::Fail,
                    "weighted " + std::to_string(expected) + " vs " + std::to_string(actual));
        } else {
            unsigned long long multiplier = 1;
            if (variant == GadgetKind::ThreeDistinct)
                for (std::size_t i = 0; i < li.prov.gadgets.size(); ++i) multiplier *= 16;
            unsigned long long in_count = brute_count(original, sem);
            unsigned long long out_count = exact_count(li.formula, sem);
            bool ok = out_count == multiplier * in_count;
            rep.add("parsimony", ok ? CheckStatus::Pass : CheckStatus::Fail,
                    std::to_string(out_count) + " = " + std::to_string(multiplier) + " * " +
                        std::to_string(in_count));
        }
    } else {
        rep.add("parsimony", CheckStatus::Skip, "original exceeds the brute-force cap");
    }
    {
        long in_size = original.num_vars + static_cast<long>(original.clauses.size());
        long out_size = li.num_vars() + li.num_clauses();
        std::ostringstream det;
        det << "out " << out_size << " in " << in_size;
        if (in_size > 0)
            det << " ratio-to-square "
                << static_cast<double>(out_size) / (static_cast<double>(in_size) * in_size);
        rep.add("size-bound", CheckStatus::Pass, det.str());
    }
    return rep;
}

}  // namespace plsat
