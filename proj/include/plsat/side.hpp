#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "plsat/layout.hpp"
#include "plsat/reduction.hpp"

namespace plsat {

// The side reduction replaces every variable of a monotone var-linked
// formula by one implication cycle of 2-clauses routed through the column
// grid: a horizontal ladder along the axis band plus, per occurrence, a mast
// climbing to the clause's nesting level (and a horizontal run when the
// clause sits at another leg). Occurrence polarity matches the side of kappa
// the edge leaves through: positive occurrences on one fixed side, negated
// on the other, which is exactly the Thm-8 discipline.
//
// Sign conventions used throughout (POS = RIGHT): a positive occurrence's
// variable sits on the column right of its clause, a negated one left. A
// cycle literal is positive exactly when the cycle traverses its variable
// moving rightward; U-turn clauses at the right end of a ladder are
// all-negated, at the left end all-positive.
namespace detail_side {

using detail_reduce::Builder;
using detail_reduce::Entity;

struct CycleVar {
    Var var = 0;
    bool lit_neg = false;  // cycle literal sign
    int col = 0;
    Rational y;
    int layer = 0;
};

struct CycleClausePlace {
    int col = 0;
    Rational y;
    int layer = 0;
};

// One variable's cycle under construction: vars in cycle order with the
// clause placement between consecutive vars supplied alongside.
struct CycleBuilder {
    Builder& b;
    std::vector<CycleVar> vars;
    std::vector<CycleClausePlace> clause_places;  // clause i sits between vars i and i+1
    std::vector<Var>& fresh_list;

    Var push_var(bool lit_neg, int col, const Rational& y, int layer) {
        Var v = b.formula.fresh_var();
        fresh_list.push_back(v);
        vars.push_back({v, lit_neg, col, y, layer});
        return v;
    }
    void push_clause_place(int col, const Rational& y, int layer) {
        clause_places.push_back({col, y, layer});
    }

    // Emits the 2-clauses of the cycle and places everything.
    void finish() {
        if (vars.size() != clause_places.size())
            throw std::logic_error("cycle builder: places and gaps out of sync");
        const std::size_t n = vars.size();
        for (std::size_t i = 0; i < n; ++i) {
            const CycleVar& a = vars[i];
            const CycleVar& c = vars[(i + 1) % n];
            const CycleClausePlace& q = clause_places[i];
            // clause (-lambda_a v lambda_c)
            Lit la{a.var, !a.lit_neg};
            Lit lc{c.var, c.lit_neg};
            // side discipline: positive occurrence right of the clause,
            // negated left
            auto side_ok = [&](const Lit& l, int vcol) {
                return l.neg ? vcol < q.col : vcol > q.col;
            };
            if (!side_ok(la, a.col) || !side_ok(lc, c.col))
                throw std::logic_error("side reduction emitted a wrong-sided occurrence");
            b.formula.add_clause({la, lc});
            b.place_clause(static_cast<int>(b.formula.clauses.size()) - 1, q.col, q.y, q.layer);
        }
        for (const CycleVar& v : vars) b.place_var(v.var, v.col, v.y, v.layer);
    }
};

// band heights: the ladder row sits at y = 0, above levels at +level, below
// at -level; mast steps interpolate strictly between
inline Rational mast_y(int level_sign, int level, int step, int steps_total) {
    return Rational(level_sign * level) * Rational(step, steps_total + 1);
}

struct LegRef {
    std::size_t clause = 0;   // formula clause index (original numbering)
    std::size_t occ = 0;      // literal index within the clause
    Side side = Side::Above;
    int level = 0;
    std::int64_t attach_x = 0;
};

}  // namespace detail_side

// Side reduction (Thm 8 discipline): every variable becomes one cycle of
// 2-clauses sized to its legs; each original clause attaches to cycle tips
// whose literal signs realize the original polarity, positives emanating to
// one side of kappa and negated occurrences to the other. Output variables
// occur in at most three clauses.
inline LinkedInstance reduce_side(const Formula& f, const std::vector<Var>& order) {
    using namespace detail_reduce;
    using namespace detail_side;
    ClassFlags flags = classify(f);
    if (!flags.monotone || !flags.is_3sat)
        throw VariantMismatch("side reduction requires monotone 3-SAT input");
    if (f.has_empty_clause()) throw std::invalid_argument("reduce_side: empty clause");
    std::vector<Side> sides(f.clauses.size(), Side::Above);
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        if (!f.clauses[c].lits.empty() && f.clauses[c].lits[0].neg) sides[c] = Side::Below;
    ThreeLeggedDrawing tld = three_legged_layout(f, order, sides);

    // legs per variable in slot order
    std::vector<std::vector<LegRef>> legs(f.num_vars + 1);
    int max_level = 1;
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (const LegPlacement& lp : tld.clauses[c].legs) {
            legs[lp.var].push_back({c, lp.occurrence, tld.clauses[c].side, tld.clauses[c].level,
                                    lp.attach_x});
            max_level = std::max(max_level, tld.clauses[c].level);
        }
    for (auto& ls : legs)
        std::sort(ls.begin(), ls.end(),
                  [](const LegRef& a, const LegRef& b) { return a.attach_x < b.attach_x; });

    Builder b;
    b.prov.variant = GadgetKind::SideCycle;
    b.prov.original_vars = f.num_vars;
    b.formula.num_vars = 0;

    // columns: ladder t occupies rungs R_1..R_k at even columns; one clause
    // column between consecutive ladders stays free for the end turns
    std::vector<int> rung_base(f.num_vars + 1, 0);
    int next_col = 2;
    std::vector<int> rung_count(f.num_vars + 1, 1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        Var t = order[i];
        rung_count[t] = static_cast<int>(legs[t].size()) + 1;
        rung_base[t] = next_col;
        next_col += 2 * rung_count[t] + 2;  // rungs, plus the gap for the turns
    }
    int total_cols = next_col;
    b.columns.assign(total_cols, ColTag::VarSeg);
    for (int c = 0; c < total_cols; ++c)
        b.columns[c] = (c % 2 == 0) ? ColTag::VarSeg : ColTag::ClauseSeg;
    b.placed.resize(total_cols);
    b.virt_x.resize(total_cols);
    for (int c = 0; c < total_cols; ++c) b.virt_x[c] = Rational(c);

    // clause vertex columns: the direct leg's mast pair (gap g spans rungs
    // g and g+1) keeps the clause on the clause column between the pair
    std::vector<int> clause_col(f.clauses.size(), -1);
    std::vector<Rational> clause_y(f.clauses.size());
    std::vector<int> direct_gap(f.clauses.size(), -1);
    std::vector<Var> direct_var(f.clauses.size(), 0);
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        // legs of clause c sorted by attach position
        std::vector<std::pair<std::int64_t, Var>> cl;
        for (const LegPlacement& lp : tld.clauses[c].legs) cl.push_back({lp.attach_x, lp.var});
        std::sort(cl.begin(), cl.end());
        std::size_t direct_idx = cl.size() >= 3 ? cl.size() / 2 : 0;
        direct_var[c] = cl[direct_idx].second;
        clause_y[c] = Rational(tld.clauses[c].side == Side::Above ? tld.clauses[c].level
                                                                  : -tld.clauses[c].level);
    }

    // occurrence -> attachment literal, filled while building the cycles
    std::map<std::pair<std::size_t, std::size_t>, Lit> attach;

    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        Var t = order[oi];
        const std::vector<LegRef>& ls = legs[t];
        int k = rung_count[t];
        auto rung = [&](int j) { return rung_base[t] + 2 * j; };  // j in 0..k-1
        std::vector<Var> cycle_fresh;
        CycleBuilder cb{b, {}, {}, cycle_fresh};

        // resolve the direct gap of every clause whose direct leg lives here
        for (int g = 0; g < k - 1; ++g) {
            const LegRef& leg = ls[g];
            if (direct_var[leg.clause] == t &&
                tld.clauses[leg.clause].legs[0].var != 0 /* always true, keep shape */) {
                // the slot of the direct occurrence must match this gap
            }
        }

        // bottom path left to right with below-leg masts in their gaps
        std::vector<Var> bottom_entry(k, 0);
        for (int j = 0; j < k; ++j) {
            // the rung variable continues the bottom chain
            cb.push_var(false, rung(j), Rational(0), 0);
            if (j == k - 1) break;
            const LegRef& leg = ls[j];
            if (leg.side == Side::Below) {
                emit_leg(b, cb, attach, leg, t, rung(j), rung(j + 1), clause_col, clause_y,
                         direct_var[leg.clause] == t && leg_is_direct(ls, j, tld, leg));
            } else {
                cb.push_clause_place(rung(j) + 1, Rational(0), 0);
            }
        }
        // right turn
        cb.push_clause_place(rung(k - 1) + 1, Rational(0), 10);
        // top path right to left with above-leg masts
        for (int j = k - 1; j >= 0; --j) {
            cb.push_var(true, rung(j), Rational(0), 20);
            if (j == 0) break;
            const LegRef& leg = ls[j - 1];
            if (leg.side == Side::Above) {
                emit_leg(b, cb, attach, leg, t, rung(j), rung(j - 1), clause_col, clause_y,
                         direct_var[leg.clause] == t && leg_is_direct(ls, j - 1, tld, leg));
            } else {
                cb.push_clause_place(rung(j - 1) + 1, Rational(0), 20);
            }
        }
        // left turn closes the cycle
        cb.push_clause_place(rung(0) - 1, Rational(0), 10);
        cb.finish();

        GadgetRecord rec;
        rec.kind = GadgetKind::SideCycle;
        rec.orig_var = t;
        rec.in_port = cycle_fresh.empty() ? 0 : cycle_fresh.front();
        rec.out_port = rec.in_port;
        rec.fresh_vars = cycle_fresh;
        b.prov.gadgets.push_back(rec);
    }

    // emit the transformed original clauses
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        std::vector<Lit> lits;
        for (std::size_t o = 0; o < f.clauses[c].lits.size(); ++o)
            lits.push_back(attach.at({c, o}));
        b.formula.add_clause(lits);
        b.place_clause(static_cast<int>(b.formula.clauses.size()) - 1, clause_col[c], clause_y[c],
                       0);
    }

    LinkedInstance li = detail_reduce::assemble(b, 0);
    li.prov.variant = GadgetKind::SideCycle;
    return li;
}

}  // namespace plsat
