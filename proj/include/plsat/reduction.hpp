#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/count.hpp"
#include "plsat/gadgets.hpp"
#include "plsat/linked.hpp"

namespace plsat {

struct VariantMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail_reduce {

// Vertical position inside a column: vertices sort by the exact height of
// the replaced edge at that column, then by a small layer for gadget wiring
// stacked around that height, then by creation order.
struct RankKey {
    Rational y;
    int layer = 0;
    long seq = 0;

    friend bool operator<(const RankKey& a, const RankKey& b) {
        if (a.y != b.y) return a.y < b.y;
        if (a.layer != b.layer) return a.layer < b.layer;
        return a.seq < b.seq;
    }
};

struct Entity {
    bool is_clause = false;
    int id = 0;  // variable id or clause index
};

struct Builder {
    Formula formula;
    std::vector<ColTag> columns;
    std::vector<Rational> virt_x;  // virtual x per column, drives interpolation
    std::vector<std::vector<std::pair<RankKey, Entity>>> placed;
    long seq = 0;
    Provenance prov;
    int gadget_counter = 0;

    void place_var(Var v, int col, const Rational& y, int layer) { place({false, v}, col, y, layer); }
    void place_clause(int c, int col, const Rational& y, int layer) { place({true, c}, col, y, layer); }
    void place(Entity e, int col, const Rational& y, int layer) {
        if (col < 0 || col >= static_cast<int>(columns.size()))
            throw std::logic_error("reduction placed an element outside the column range");
        placed[col].push_back({RankKey{y, layer, seq++}, e});
    }
};

struct EdgeGeom {
    Var orig_var = 0;
    int orig_clause = -1;
    int var_col = 0;
    int clause_col = 0;
    Rational y_var, y_clause;

    bool var_left() const { return var_col < clause_col; }
};

inline Rational edge_y_at(const Builder& b, const EdgeGeom& e, int col) {
    Rational x1 = b.virt_x[e.var_col], x2 = b.virt_x[e.clause_col];
    Rational x = b.virt_x[col];
    return e.y_var + (e.y_clause - e.y_var) * ((x - x1) / (x2 - x1));
}

inline PaddingSpec variant_padding(GadgetKind k) {
    switch (k) {
        case GadgetKind::Basic: return {0, 0};
        case GadgetKind::OneInThree: return {2, 1};
        case GadgetKind::ThreeDistinct:
        case GadgetKind::Monotone: return {4, 3};
        default: throw std::invalid_argument("not an edge-replacement variant");
    }
}

inline void check_variant_class(GadgetKind k, const ClassFlags& flags) {
    switch (k) {
        case GadgetKind::Basic:
        case GadgetKind::ThreeDistinct:
            if (!flags.is_3sat) throw VariantMismatch("input is not a 3-SAT formula");
            break;
        case GadgetKind::OneInThree:
            if (!flags.positive || !flags.exactly_three_distinct)
                throw VariantMismatch(
                    "input is not positive with exactly three distinct variables per clause");
            break;
        case GadgetKind::Monotone:
            if (!flags.monotone || !flags.is_3sat)
                throw VariantMismatch("input is not monotone 3-SAT");
            break;
        default:
            throw std::invalid_argument("not an edge-replacement variant");
    }
}

struct Emit {
    const char* name;
    int col;    // offset from the in port, multiplied by the direction
    int layer;
};

inline const std::vector<Emit>& regular_plan(GadgetKind kind) {
    static const std::vector<Emit> basic = {{"c_x", 1, 1}, {"c_x'", 1, -1}, {"x'", 2, 0}};
    static const std::vector<Emit> one_in_three = {
        {"c1", 1, 0}, {"a", 2, 1}, {"b", 2, -1}, {"c2", 3, 0}, {"x'", 4, 0}};
    static const std::vector<Emit> three_distinct = {
        {"a", 2, -5}, {"u", 2, -3}, {"b", 2, -1}, {"a'", 2, 1}, {"u'", 2, 3}, {"b'", 2, 5},
        {"k1", 1, -4}, {"k2", 1, -2}, {"k3", 1, 2}, {"k4", 1, 4},
        {"m1", 3, -4}, {"m2", 3, -2}, {"m3", 3, 2}, {"m4", 3, 4}, {"x'", 4, 0}};
    static const std::vector<Emit> monotone = {{"xbar", 2, 0}, {"d1", 1, 1}, {"d2", 1, -1},
                                               {"d3", 3, 1}, {"d4", 3, -1}, {"x'", 4, 0}};
    switch (kind) {
        case GadgetKind::Basic: return basic;
        case GadgetKind::OneInThree: return one_in_three;
        case GadgetKind::ThreeDistinct: return three_distinct;
        case GadgetKind::Monotone: return monotone;
        default: throw std::invalid_argument("no regular plan for this kind");
    }
}

// At-clause plans: the final connector of a chain arriving from the clause's
// right. Ports sit at +3 (in) and +1 (out); the far clause shares the target
// clause's column (offset 0). Layers are zone-relative; `fside` is the far
// clause group's layer sign relative to the target clause vertex, and the
// out port hugs the zone end nearer the clause exactly when the far group
// and the zone are on the same side.
// Layers here are absolute offsets around the target clause vertex (layer 0):
// internals live in the chain's zone, the far clause group hugs the clause at
// fsign*5..8. inner_port places the out port at the zone end facing the
// clause; that holds exactly when the far group sits on the zone's side.
inline std::vector<Emit> at_clause_plan(GadgetKind kind, int zone, bool inner_port, int fsign) {
    int in = zone < 0 ? 1 : -1;  // direction from the zone toward the clause's layer 0
    auto zl = [&](int off) { return zone + off * in; };
    int xp = inner_port ? zl(30) : zl(-30);
    int f1 = fsign * 5, f2 = fsign * 6, f3 = fsign * 7, f4 = fsign * 8;
    switch (kind) {
        case GadgetKind::OneInThree:
            // near clause c1=(x,a,b)@+2, internals@+1, far c2=(x',a,b)@0
            return {{"c1", 2, zone}, {"a", 1, zl(10)}, {"b", 1, zl(-10)}, {"x'", 1, xp},
                    {"c2", 0, f1}};
        case GadgetKind::Monotone:
            return {{"d1", 2, zl(10)}, {"d2", 2, zl(-10)}, {"d4", 2, inner_port ? zl(20) : zl(-20)},
                    {"xbar", 1, zone}, {"x'", 1, xp}, {"d3", 0, f1}};
        case GadgetKind::ThreeDistinct: {
            // the out port ends up at the zone's top layer exactly when it
            // faces an above-lying clause center or sits inner in a below zone
            bool xp_top = (zone < 0) ? inner_port : !inner_port;
            // far clauses sorted by required layer order, ascending
            int fa = fsign < 0 ? fsign * 8 : fsign * 5;
            int fb = fsign < 0 ? fsign * 7 : fsign * 6;
            int fc = fsign < 0 ? fsign * 6 : fsign * 7;
            int fd = fsign < 0 ? fsign * 5 : fsign * 8;
            // ascending: fa < fb < fc < fd
            const char *m_lo, *m_lo2, *m_hi2, *m_hi;
            if (xp_top) {
                m_lo = "m4"; m_lo2 = "m3"; m_hi2 = "m1"; m_hi = "m2";
            } else {
                m_lo = "m2"; m_lo2 = "m1"; m_hi2 = "m3"; m_hi = "m4";
            }
            std::vector<Emit> plan;
            if (inner_port)
                plan = {{"b'", 1, zl(-30)}, {"u'", 1, zl(-20)}, {"a'", 1, zl(-10)},
                        {"a", 1, zone},     {"u", 1, zl(10)},   {"b", 1, zl(20)},
                        {"x'", 1, zl(30)},
                        {"k4", 2, zl(-29)}, {"k3", 2, zl(-19)}, {"k1", 2, zl(1)},
                        {"k2", 2, zl(11)}};
            else
                plan = {{"x'", 1, zl(-30)}, {"b", 1, zl(-20)}, {"u", 1, zl(-10)},
                        {"a", 1, zone},     {"a'", 1, zl(10)}, {"u'", 1, zl(20)},
                        {"b'", 1, zl(30)},
                        {"k2", 2, zl(-29)}, {"k1", 2, zl(-19)}, {"k3", 2, zl(1)},
                        {"k4", 2, zl(11)}};
            plan.push_back({m_lo, 0, fa});
            plan.push_back({m_lo2, 0, fb});
            plan.push_back({m_hi2, 0, fc});
            plan.push_back({m_hi, 0, fd});
            return plan;
        }
        default:
            throw std::invalid_argument("no at-clause plan for this kind");
    }
}

// Emits one connector and places its elements. zone_y/zone_layer, when given,
// override the interpolated heights (used near the clause and on overshoot
// strands). col_base is the column of the in port; offsets from the plan are
// applied as col_base + dir*offset for regular plans, col_base + offset for
// at-clause plans (their offsets are relative to the clause column).
inline GadgetInstantiation emit_connector(Builder& b, GadgetKind kind, Var in_port,
                                          const std::vector<Emit>& plan, int col_base, int dir,
                                          const EdgeGeom& e,
                                          std::optional<std::pair<Rational, int>> zone) {
    GadgetInstantiation g = instantiate(kind, b.formula, in_port, dir);
    for (const Emit& em : plan) {
        int col = col_base + em.col * dir;
        Rational y = zone ? zone->first : edge_y_at(b, e, col);
        int layer = zone ? zone->second + em.layer : em.layer;
        auto vit = g.vars.find(em.name);
        if (vit != g.vars.end()) {
            b.place_var(vit->second, col, y, layer);
        } else {
            auto cit = g.clause_of.find(em.name);
            if (cit == g.clause_of.end()) throw std::logic_error("unknown template element");
            b.place_clause(static_cast<int>(cit->second), col, y, layer);
        }
    }
    // record provenance
    GadgetRecord rec;
    rec.kind = kind;
    rec.orig_var = e.orig_var;
    rec.orig_clause = e.orig_clause;
    rec.in_port = g.in_port;
    rec.out_port = g.out_port;
    int gadget_no = b.gadget_counter++;
    for (const auto& [name, v] : g.vars)
        if (v != g.in_port) {
            rec.fresh_vars.push_back(v);
            b.prov.var_names[v] = "g" + std::to_string(gadget_no) + "_" + name;
        }
    for (std::size_t ci : g.clause_indices) rec.clause_indices.push_back(static_cast<int>(ci));
    b.prov.gadgets.push_back(rec);
    return g;
}

// Sorts every column by rank key, assigns final ranks, and derives the
// serpentine kappa: clause columns left to right traversed bottom-to-top,
// variable columns right to left traversed top-to-bottom. The connecting
// arcs nest outside the region, so the union with kappa stays planar.
inline LinkedInstance assemble(Builder& b, int original_clauses) {
    LinkedInstance li;
    li.formula = b.formula;
    li.columns = b.columns;
    li.prov = b.prov;
    li.prov.original_clause_of.assign(li.formula.clauses.size(), -1);
    for (int c = 0; c < original_clauses; ++c) li.prov.original_clause_of[c] = c;
    li.vertex_column.assign(li.formula.num_vars + li.formula.clauses.size(), -1);
    li.vertex_rank.assign(li.vertex_column.size(), -1);
    for (int col = 0; col < static_cast<int>(b.columns.size()); ++col) {
        auto& slot = b.placed[col];
        std::sort(slot.begin(), slot.end(),
                  [](const auto& a, const auto& bq) { return a.first < bq.first; });
        for (std::size_t rank = 0; rank < slot.size(); ++rank) {
            const Entity& ent = slot[rank].second;
            int u = ent.is_clause ? li.clause_vertex(ent.id) : li.var_vertex(ent.id);
            if (li.vertex_column[u] >= 0) throw std::logic_error("vertex placed twice");
            li.vertex_column[u] = col;
            li.vertex_rank[u] = static_cast<int>(rank);
        }
    }
    for (int u = 0; u < static_cast<int>(li.vertex_column.size()); ++u)
        if (li.vertex_column[u] < 0) throw std::logic_error("reduction left a vertex unplaced");
    for (int col = 0; col < static_cast<int>(b.columns.size()); ++col) {
        if (b.columns[col] != ColTag::ClauseSeg) continue;
        for (const auto& [key, ent] : b.placed[col])
            if (ent.is_clause) li.kappa_clauses.push_back(ent.id);
    }
    for (int col = static_cast<int>(b.columns.size()) - 1; col >= 0; --col) {
        if (b.columns[col] != ColTag::VarSeg) continue;
        const auto& slot = b.placed[col];
        for (auto it = slot.rbegin(); it != slot.rend(); ++it)
            if (!it->second.is_clause) li.kappa_vars.push_back(it->second.id);
    }
    if (static_cast<int>(li.kappa_clauses.size()) != li.num_clauses() ||
        static_cast<int>(li.kappa_vars.size()) != li.num_vars())
        throw std::logic_error("kappa misses vertices");
    return li;
}

}  // namespace detail_reduce

struct ChainDescriptor {
    Var orig_var = 0;
    bool from_right = false;
    Rational approach_band;  // exact edge height one padded column from the clause
};

// Identifies the chain that must take the all-right detour: when all three
// variables lie to the clause's right, the middle chain by approach height
// overshoots past the clause and comes back (fig placement). Otherwise no
// detour is needed.
inline std::optional<std::size_t> place_all_right_detour(
    const std::vector<ChainDescriptor>& chains) {
    std::vector<std::size_t> right;
    for (std::size_t i = 0; i < chains.size(); ++i)
        if (chains[i].from_right) right.push_back(i);
    if (right.size() < 3) return std::nullopt;
    if (right.size() > 3) throw std::logic_error("clause with more than three incident chains");
    std::sort(right.begin(), right.end(), [&](std::size_t a, std::size_t b) {
        return chains[a].approach_band < chains[b].approach_band;
    });
    return right[1];
}

// Reduces a planar formula with a parity-scaled drawing to a Linked Planar
// 3-SAT instance by replacing every edge of the drawing with a chain of
// connector gadgets of the chosen variant.
inline LinkedInstance reduce(const Formula& f, const IncidenceGraph& ig, const ScaledDrawing& sd,
                             GadgetKind variant) {
    using namespace detail_reduce;
    if (ig.num_vars != f.num_vars || ig.num_clauses != static_cast<int>(f.clauses.size()))
        throw std::invalid_argument("reduce: incidence graph does not match the formula");
    if (f.has_empty_clause()) throw std::invalid_argument("reduce: empty clause");
    check_variant_class(variant, classify(f));
    const GridDrawing& d = sd.drawing;
    if (static_cast<int>(d.pos.size()) != ig.g.n())
        throw std::invalid_argument("reduce: drawing does not match the incidence graph");
    if (!parity_compliant(ig, d)) throw std::invalid_argument("reduce: drawing not parity scaled");
    if (!drawing_is_plane(ig.g, d)) throw std::invalid_argument("reduce: drawing has crossings");

    PaddingSpec pad = variant_padding(variant);
    RDrawing r = build_r_drawing(ig, d, pad);

    Builder b;
    b.formula = f;
    b.columns = r.columns;
    b.placed.resize(b.columns.size());
    b.prov.variant = variant;
    b.prov.original_vars = f.num_vars;
    b.prov.scale_multiple = sd.multiple;

    // virtual x per column: original columns keep their x, padding columns
    // take evenly spaced rationals inside the gap
    b.virt_x.assign(b.columns.size(), Rational(0));
    {
        std::vector<std::pair<int, std::int64_t>> originals;
        for (auto [x, col] : r.original_column) originals.push_back({col, x});
        std::sort(originals.begin(), originals.end());
        for (std::size_t i = 0; i < originals.size(); ++i) {
            auto [col, x] = originals[i];
            b.virt_x[col] = Rational(x);
            if (i + 1 < originals.size()) {
                int next_col = originals[i + 1].first;
                int inserted = next_col - col - 1;
                for (int j = 1; j <= inserted; ++j)
                    b.virt_x[col + j] = Rational(x) + Rational(j, inserted + 1);
            }
        }
    }

    // place original vertices
    for (Var v = 1; v <= f.num_vars; ++v)
        b.place_var(v, r.vertex_column[ig.var_vertex(v)], Rational(d.pos[ig.var_vertex(v)].y), 0);
    for (int c = 0; c < ig.num_clauses; ++c)
        b.place_clause(c, r.vertex_column[ig.clause_vertex(c)],
                       Rational(d.pos[ig.clause_vertex(c)].y), 0);

    const int port_step = variant == GadgetKind::Basic ? 2 : 4;

    // process clause by clause so right-side chains can be coordinated
    for (int cj = 0; cj < ig.num_clauses; ++cj) {
        int gamma = r.vertex_column[ig.clause_vertex(cj)];
        Rational y_c(d.pos[ig.clause_vertex(cj)].y);

        // distinct variables in literal order
        std::vector<Var> vars;
        for (const Lit& l : f.clauses[cj].lits)
            if (std::find(vars.begin(), vars.end(), l.var) == vars.end()) vars.push_back(l.var);

        std::vector<EdgeGeom> geoms;
        std::vector<ChainDescriptor> chains;
        for (Var v : vars) {
            EdgeGeom e;
            e.orig_var = v;
            e.orig_clause = cj;
            e.var_col = r.vertex_column[ig.var_vertex(v)];
            e.clause_col = gamma;
            e.y_var = Rational(d.pos[ig.var_vertex(v)].y);
            e.y_clause = y_c;
            geoms.push_back(e);
            ChainDescriptor cd;
            cd.orig_var = v;
            cd.from_right = e.var_col > gamma;
            cd.approach_band =
                cd.from_right ? edge_y_at(b, e, gamma + 1) : edge_y_at(b, e, gamma - 1);
            chains.push_back(cd);
        }
        // width-2 connectors land on the column right of the clause directly,
        // so only the width-4 variants ever need the detour
        std::optional<std::size_t> overshoot =
            variant == GadgetKind::Basic ? std::nullopt : place_all_right_detour(chains);

        // zone ranks for right-side chains: sorted by approach band, below the
        // clause height first (descending band among those below), above after
        std::vector<std::size_t> right_idx;
        for (std::size_t i = 0; i < chains.size(); ++i)
            if (chains[i].from_right) right_idx.push_back(i);
        std::map<std::size_t, int> zone_of;  // chain -> signed zone base
        {
            std::vector<std::size_t> below, above;
            for (std::size_t i : right_idx)
                (chains[i].approach_band <= y_c ? below : above).push_back(i);
            std::sort(below.begin(), below.end(), [&](std::size_t a, std::size_t bql) {
                return chains[a].approach_band > chains[bql].approach_band;
            });
            std::sort(above.begin(), above.end(), [&](std::size_t a, std::size_t bql) {
                return chains[a].approach_band < chains[bql].approach_band;
            });
            for (std::size_t i = 0; i < below.size(); ++i)
                zone_of[below[i]] = -100 * static_cast<int>(i + 1);
            for (std::size_t i = 0; i < above.size(); ++i)
                zone_of[above[i]] = 100 * static_cast<int>(i + 1);
        }

        for (std::size_t i = 0; i < vars.size(); ++i) {
            const EdgeGeom& e = geoms[i];
            Var port = e.orig_var;
            int port_col = e.var_col;

            if (!chains[i].from_right) {
                // chain toward the clause, landing on the adjacent column
                if ((gamma - 1 - e.var_col) % port_step != 0)
                    throw std::logic_error("padding parity violated on a left chain");
                while (port_col < gamma - 1) {
                    GadgetInstantiation g = emit_connector(b, variant, port, regular_plan(variant),
                                                           port_col, +1, e, std::nullopt);
                    port = g.out_port;
                    port_col += port_step;
                }
            } else if (overshoot && *overshoot == i) {
                // all-right detour: regular hops to gamma+3, two leftward hops
                // overshooting to gamma-5, one rightward hop back to gamma-1
                if ((e.var_col - (gamma + 3)) % port_step != 0)
                    throw std::logic_error("padding parity violated on the overshoot chain");
                if (gamma - 5 < 0) throw std::logic_error("no room to the clause's left");
                while (port_col > gamma + 3) {
                    GadgetInstantiation g = emit_connector(b, variant, port, regular_plan(variant),
                                                           port_col, -1, e, std::nullopt);
                    port = g.out_port;
                    port_col -= port_step;
                }
                int side = chains[i].approach_band <= y_c ? -1 : 1;
                std::pair<Rational, int> out_zone{y_c, side * 300};
                std::pair<Rational, int> ret_zone{y_c, side * 250};
                GadgetInstantiation ga = emit_connector(b, variant, port, regular_plan(variant),
                                                        gamma + 3, -1, e, out_zone);
                GadgetInstantiation gb = emit_connector(b, variant, ga.out_port,
                                                        regular_plan(variant), gamma - 1, -1, e,
                                                        out_zone);
                GadgetInstantiation gc = emit_connector(b, variant, gb.out_port,
                                                        regular_plan(variant), gamma - 5, +1, e,
                                                        ret_zone);
                // park the final port next to the clause, between the wrap ports
                // (re-place with a near-clause key)
                port = gc.out_port;
                port_col = gamma - 1;
                // fix the port's key: it was placed at ret_zone; move it next to
                // the clause by overriding with a dedicated key
                for (auto& [key, ent] : b.placed[gamma - 1])
                    if (!ent.is_clause && ent.id == port) {
                        key.y = y_c;
                        key.layer = side;
                    }
            } else if (chains[i].from_right) {
                // regular leftward hops to gamma+3, then the at-clause connector
                if (variant == GadgetKind::Basic) {
                    while (port_col > gamma + 1) {
                        GadgetInstantiation g = emit_connector(
                            b, variant, port, regular_plan(variant), port_col, -1, e, std::nullopt);
                        port = g.out_port;
                        port_col -= port_step;
                    }
                } else {
                    if (e.var_col == gamma + 1) {
                        // adjacent: nothing to do
                    } else {
                        if ((e.var_col - (gamma + 3)) % port_step != 0)
                            throw std::logic_error("padding parity violated on a right chain");
                        while (port_col > gamma + 3) {
                            GadgetInstantiation g =
                                emit_connector(b, variant, port, regular_plan(variant), port_col,
                                               -1, e, std::nullopt);
                            port = g.out_port;
                            port_col -= port_step;
                        }
                        // at-clause connector: decide the far-clause side from the
                        // at-clause peers (zone order = band order)
                        int my_zone = zone_of.at(i);
                        bool peer_above = false, peer_below = false, any_peer = false;
                        for (std::size_t j : right_idx) {
                            if (j == i || (overshoot && *overshoot == j)) continue;
                            any_peer = true;
                            if (zone_of.at(j) > my_zone) peer_above = true;
                            else peer_below = true;
                        }
                        int fsign;
                        if (!any_peer) fsign = my_zone < 0 ? -1 : 1;
                        else if (peer_above && !peer_below) fsign = -1;
                        else if (peer_below && !peer_above) fsign = 1;
                        else throw std::logic_error("mixed at-clause peers");
                        bool inner = fsign == (my_zone < 0 ? -1 : 1);
                        GadgetInstantiation g = emit_connector(
                            b, variant, port, at_clause_plan(variant, my_zone, inner, fsign),
                            gamma, +1, e, std::pair<Rational, int>{y_c, 0});
                        port = g.out_port;
                        port_col = gamma + 1;
                    }
                }
            }

            // substitute the clause occurrence with the final port
            if (port != e.orig_var)
                b.formula = substitute_occurrence(b.formula, cj, e.orig_var, port);
        }
    }

    return detail_reduce::assemble(b, ig.num_clauses);
}

inline LinkedInstance reduce(const Formula& f, GadgetKind variant) {
    IncidenceGraph ig = build_incidence_graph(f);
    GridDrawing d = grid_embed(ig.g);
    ScaledDrawing sd = parity_scale(ig, d);
    return reduce(f, ig, sd, variant);
}

// Serpentine cycle through exactly the variable vertices (H). Reduced
// instances have strip-local edges only, so the same spiral that realizes
// kappa_V stays planar when added alone.
inline CycleSpec emit_variable_cycle(const LinkedInstance& li) {
    CycleSpec cyc;
    for (Var v : li.kappa_vars) cyc.vertices.push_back(li.var_vertex(v));
    return cyc;
}

inline CycleSpec emit_clause_cycle(const LinkedInstance& li) {
    CycleSpec cyc;
    for (int c : li.kappa_clauses) cyc.vertices.push_back(li.clause_vertex(c));
    return cyc;
}

}  // namespace plsat
