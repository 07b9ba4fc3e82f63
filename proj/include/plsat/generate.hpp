#pragma once

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/layout.hpp"
#include "plsat/planarity.hpp"

namespace plsat {

enum class GenClass { Planar3Sat, Monotone, Positive1In3, Geq4Distinct, Monotone3Distinct };

inline const char* gen_class_name(GenClass c) {
    switch (c) {
        case GenClass::Planar3Sat: return "planar3sat";
        case GenClass::Monotone: return "monotone";
        case GenClass::Positive1In3: return "positive_1in3";
        case GenClass::Geq4Distinct: return "geq4_distinct";
        case GenClass::Monotone3Distinct: return "monotone3_distinct";
    }
    return "?";
}

inline GenClass gen_class_from(const std::string& s) {
    for (GenClass c : {GenClass::Planar3Sat, GenClass::Monotone, GenClass::Positive1In3,
                       GenClass::Geq4Distinct, GenClass::Monotone3Distinct})
        if (s == gen_class_name(c)) return c;
    throw std::invalid_argument("unknown generator class: " + s);
}

struct GenInstance {
    Formula formula;
    GridDrawing drawing;  // parity-compliant drawing of the incidence graph
    int scale_multiple = 1;
    std::vector<Side> sides;  // one per clause (claw-based classes)
    std::vector<Var> order;   // variable order along the x-axis (identity)
};

namespace detail_gen {

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

inline bool uniform_cut(std::mt19937_64& rng) { return rng() % 2 == 0; }

// Caterpillar instances with a hand-built drawing: variable groups at x=4g,
// one clause per clause column at x=4j+1, edges either adjacent (distance 1)
// or reaching the next group (distance 3, one BASIC connector when reduced).
inline GenInstance gen_caterpillar(std::mt19937_64& rng, int target_vars, int target_clauses) {
    GenInstance out;
    int m = std::max(1, target_clauses);
    int groups = m + 1;
    std::vector<std::vector<Var>> group(groups);
    out.formula.num_vars = 0;
    for (int g = 0; g < groups; ++g) {
        int count = 1;
        if (out.formula.num_vars + (groups - g) < target_vars && uniform_cut(rng)) count = 2;
        for (int i = 0; i < count && out.formula.num_vars < target_vars; ++i)
            group[g].push_back(out.formula.fresh_var());
        if (group[g].empty()) group[g].push_back(out.formula.fresh_var());
    }
    for (int j = 0; j < m; ++j) {
        std::vector<Var> pool;
        for (Var v : group[j]) pool.push_back(v);
        for (Var v : group[j + 1]) pool.push_back(v);
        int len = static_cast<int>(uniform(rng, 2, std::min<std::uint64_t>(3, pool.size())));
        std::vector<Lit> lits;
        std::set<Var> used;
        while (static_cast<int>(lits.size()) < len) {
            Var v = pool[uniform(rng, 0, pool.size() - 1)];
            if (!used.insert(v).second) continue;
            lits.push_back(Lit{v, rng() % 2 == 0});
        }
        out.formula.add_clause(lits);
    }
    // drawing
    IncidenceGraph ig = build_incidence_graph(out.formula);
    out.drawing.pos.resize(ig.g.n());
    for (int g = 0; g < groups; ++g)
        for (std::size_t i = 0; i < group[g].size(); ++i)
            out.drawing.pos[ig.var_vertex(group[g][i])] = {4 * g, static_cast<std::int64_t>(2 * i)};
    for (int j = 0; j < m; ++j) out.drawing.pos[ig.clause_vertex(j)] = {4 * j + 1, 1};
    out.sides.assign(out.formula.clauses.size(), Side::Above);
    for (Var v = 1; v <= out.formula.num_vars; ++v) out.order.push_back(v);
    return out;
}

// Laminar claw family over one side: recursive intervals; each clause gets
// its endpoints as legs plus middles that avoid the strict interior of every
// nested child span (otherwise the vertical leg would pierce the child's bar).
struct ClawBuilder {
    std::mt19937_64& rng;
    int min_legs, max_legs;
    std::vector<std::vector<Var>>& clauses;  // variable lists
    int budget;

    void build(int lo, int hi) {
        if (budget <= 0 || hi - lo < min_legs - 1) return;
        // children: up to two strictly disjoint subintervals
        std::vector<std::pair<int, int>> children;
        if (hi - lo >= 2 && rng() % 3 != 0) {
            int a = static_cast<int>(uniform(rng, lo, hi - 1));
            int b = static_cast<int>(uniform(rng, a + 1, hi));
            if (b - a < hi - lo) children.push_back({a, b});
        }
        if (!children.empty() && rng() % 2 == 0) {
            int b = children[0].second;
            if (b + 2 <= hi) {
                int c = static_cast<int>(uniform(rng, b + 1, hi - 1));
                int d = static_cast<int>(uniform(rng, c + 1, hi));
                if (!(c == lo && d == hi)) children.push_back({c, d});
            }
        }
        for (auto [a, b] : children) build(a, b);
        if (budget <= 0) return;
        // this node's clause over [lo, hi]
        std::vector<int> middles;
        for (int p = lo + 1; p < hi; ++p) {
            bool pierced = false;
            for (auto [a, b] : children)
                if (a < p && p < b) pierced = true;
            if (!pierced) middles.push_back(p);
        }
        int want_mid = static_cast<int>(uniform(rng, min_legs - 2, max_legs - 2));
        if (static_cast<int>(middles.size()) < min_legs - 2) return;  // cannot place this clause
        std::vector<int> legs{lo, hi};
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < std::min<int>(want_mid, middles.size()))
            chosen.insert(middles[uniform(rng, 0, middles.size() - 1)]);
        for (int p : chosen) legs.push_back(p);
        std::sort(legs.begin(), legs.end());
        std::vector<Var> vs;
        for (int p : legs) vs.push_back(p + 1);
        clauses.push_back(vs);
        --budget;
    }
};

inline GenInstance gen_claws(std::mt19937_64& rng, int target_vars, int target_clauses,
                             int min_legs, int max_legs, bool both_sides, bool positive_above,
                             bool negative_below) {
    GenInstance out;
    int n = std::max(target_vars, min_legs);
    out.formula.num_vars = n;
    std::vector<std::vector<Var>> above_cls, below_cls;
    {
        ClawBuilder cb{rng, min_legs, max_legs, above_cls,
                       both_sides ? (target_clauses + 1) / 2 : target_clauses};
        cb.build(0, n - 1);
    }
    if (both_sides) {
        ClawBuilder cb{rng, min_legs, max_legs, below_cls, target_clauses / 2};
        cb.build(0, n - 1);
    }
    for (const auto& vs : above_cls) {
        std::vector<Lit> lits;
        for (Var v : vs) lits.push_back(Lit{v, !positive_above});
        out.formula.add_clause(lits);
        out.sides.push_back(Side::Above);
    }
    for (const auto& vs : below_cls) {
        std::vector<Lit> lits;
        for (Var v : vs) lits.push_back(Lit{v, negative_below});
        out.formula.add_clause(lits);
        out.sides.push_back(Side::Below);
    }
    for (Var v = 1; v <= n; ++v) out.order.push_back(v);
    return out;
}

}  // namespace detail_gen

// Deterministic per seed. The returned instance is certified: its class flags
// hold, its incidence graph is planar, and the drawing (when present) is a
// plane parity-compliant drawing of the incidence graph.
inline GenInstance gen_instance(GenClass cls, int target_vars, int target_clauses,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    GenInstance out;
    switch (cls) {
        case GenClass::Planar3Sat:
            out = detail_gen::gen_caterpillar(rng, target_vars, target_clauses);
            break;
        case GenClass::Monotone:
            out = detail_gen::gen_claws(rng, target_vars, target_clauses, 2, 3, true, true, true);
            break;
        case GenClass::Monotone3Distinct:
            out = detail_gen::gen_claws(rng, target_vars, target_clauses, 3, 3, true, true, true);
            break;
        case GenClass::Positive1In3:
            out = detail_gen::gen_claws(rng, target_vars, target_clauses, 3, 3, true, true, false);
            break;
        case GenClass::Geq4Distinct:
            out = detail_gen::gen_claws(rng, target_vars, target_clauses, 4, 5, true, true, true);
            break;
    }
    // claw classes draw via the generic embedder
    if (cls != GenClass::Planar3Sat && !out.formula.clauses.empty()) {
        IncidenceGraph ig = build_incidence_graph(out.formula);
        GridDrawing d = grid_embed(ig.g);
        ScaledDrawing sd = parity_scale(ig, d);
        out.drawing = sd.drawing;
        out.scale_multiple = sd.multiple;
    }
    // self-certification
    ClassFlags flags = classify(out.formula);
    IncidenceGraph ig = build_incidence_graph(out.formula);
    if (!planarity_test(ig.g).planar) throw std::logic_error("generator produced a non-planar instance");
    if (!out.formula.clauses.empty()) {
        if (!parity_compliant(ig, out.drawing) || !drawing_is_plane(ig.g, out.drawing))
            throw std::logic_error("generator produced an invalid drawing");
    }
    switch (cls) {
        case GenClass::Planar3Sat:
            if (!flags.is_3sat) throw std::logic_error("class certification failed");
            break;
        case GenClass::Monotone:
            if (!flags.monotone || !flags.is_3sat) throw std::logic_error("class certification failed");
            break;
        case GenClass::Monotone3Distinct:
            if (!flags.monotone || !flags.exactly_three_distinct)
                throw std::logic_error("class certification failed");
            break;
        case GenClass::Positive1In3:
            if (!flags.positive || !flags.exactly_three_distinct)
                throw std::logic_error("class certification failed");
            break;
        case GenClass::Geq4Distinct:
            for (const Clause& c : out.formula.clauses) {
                std::set<Var> distinct;
                for (const Lit& l : c.lits) distinct.insert(l.var);
                if (distinct.size() < 4) throw std::logic_error("class certification failed");
            }
            break;
    }
    return out;
}

}  // namespace plsat
