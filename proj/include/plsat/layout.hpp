#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/graph.hpp"
#include "plsat/planarity.hpp"
#include "plsat/rational.hpp"

namespace plsat {

struct NonPlanarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

// Straight-line drawing on the integer grid.
struct GridDrawing {
    std::vector<Point> pos;  // indexed by vertex id
};

namespace geom {

using I128 = __int128;

inline I128 cross(Point o, Point a, Point b) {
    return static_cast<I128>(a.x - o.x) * (b.y - o.y) -
           static_cast<I128>(a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(Point p, Point a, Point b) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Proper or improper intersection of closed segments, exact.
inline bool segments_intersect(Point a, Point b, Point c, Point d) {
    I128 d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
           (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

}  // namespace geom

// O(m^2) exact oracle: no two edges intersect except at shared endpoints, no
// vertex lies on a non-incident edge, all vertex positions distinct.
inline bool drawing_is_plane(const Graph& g, const GridDrawing& d) {
    if (static_cast<int>(d.pos.size()) != g.n()) return false;
    for (int u = 0; u < g.n(); ++u)
        for (int w = u + 1; w < g.n(); ++w)
            if (d.pos[u] == d.pos[w]) return false;
    for (std::size_t i = 0; i < g.edge_list.size(); ++i) {
        auto [a, b] = g.edge_list[i];
        for (std::size_t j = i + 1; j < g.edge_list.size(); ++j) {
            auto [c, e] = g.edge_list[j];
            if (a == c || a == e || b == c || b == e) {
                // shared endpoint: only collinear overlap is forbidden
                int shared = (a == c || a == e) ? a : b;
                int p = (shared == a) ? b : a;
                int q = (shared == c) ? e : c;
                if (geom::cross(d.pos[shared], d.pos[p], d.pos[q]) == 0 &&
                    (geom::on_segment(d.pos[p], d.pos[shared], d.pos[q]) ||
                     geom::on_segment(d.pos[q], d.pos[shared], d.pos[p])))
                    return false;
                continue;
            }
            if (geom::segments_intersect(d.pos[a], d.pos[b], d.pos[c], d.pos[e])) return false;
        }
        for (int u = 0; u < g.n(); ++u) {
            if (u == a || u == b) continue;
            if (geom::on_segment(d.pos[u], d.pos[a], d.pos[b])) return false;
        }
    }
    return true;
}

// Straight-line embedding on an O(n) x O(n) grid (shift method on a planar
// augmentation; the added edges are dropped afterwards).
inline GridDrawing grid_embed(const Graph& g) {
    PlanarityResult pr = planarity_test(g);
    if (!pr.planar) throw NonPlanarError("grid_embed: input graph is not planar");
    GridDrawing d;
    d.pos.resize(g.n());
    if (g.n() == 1) return d;
    if (g.n() == 2) {
        d.pos[1] = {1, 0};
        return d;
    }
    using namespace detail;
    BoostGraph bg = to_boost(g);
    using Edge = boost::graph_traits<BoostGraph>::edge_descriptor;
    auto embed_now = [&](std::vector<std::vector<Edge>>& emb) {
        emb.assign(boost::num_vertices(bg), {});
        if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                 boost::boyer_myrvold_params::embedding =
                                                     emb.data()))
            throw std::logic_error("grid_embed: augmentation made the graph non-planar");
    };
    std::vector<std::vector<Edge>> embedding;
    boost::make_connected(bg);
    reindex_edges(bg);
    embed_now(embedding);
    boost::make_biconnected_planar(bg, embedding.data());
    reindex_edges(bg);
    embed_now(embedding);
    boost::make_maximal_planar(bg, embedding.data());
    reindex_edges(bg);
    embed_now(embedding);
    std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> ordering;
    boost::planar_canonical_ordering(bg, embedding.data(), std::back_inserter(ordering));
    struct Coord {
        std::size_t x = 0, y = 0;
    };
    std::vector<Coord> coords(boost::num_vertices(bg));
    auto dmap = boost::make_iterator_property_map(coords.begin(), boost::get(boost::vertex_index, bg));
    boost::chrobak_payne_straight_line_drawing(bg, embedding, ordering.begin(), ordering.end(),
                                               dmap);
    for (int u = 0; u < g.n(); ++u)
        d.pos[u] = {static_cast<std::int64_t>(coords[u].x), static_cast<std::int64_t>(coords[u].y)};
    return d;
}

// Smallest horizontal distance between a vertex and a non-incident edge,
// exact. Returns nullopt when no edge spans any vertex's y.
inline std::optional<Rational> horizontal_clearance(const Graph& g, const GridDrawing& d) {
    std::optional<Rational> best;
    auto consider = [&](const Rational& c) {
        if (!best || c < *best) best = c;
    };
    for (int u = 0; u < g.n(); ++u) {
        Point p = d.pos[u];
        for (auto [a, b] : g.edge_list) {
            if (a == u || b == u) continue;
            Point pa = d.pos[a], pb = d.pos[b];
            if (pa.y == pb.y) {
                if (p.y != pa.y) continue;
                std::int64_t lo = std::min(pa.x, pb.x), hi = std::max(pa.x, pb.x);
                if (p.x < lo) consider(Rational(lo - p.x));
                else if (p.x > hi) consider(Rational(p.x - hi));
                else consider(Rational(0));
                continue;
            }
            if (p.y < std::min(pa.y, pb.y) || p.y > std::max(pa.y, pb.y)) continue;
            // x of the edge at height p.y
            Rational ex = Rational(pa.x) +
                          Rational(pb.x - pa.x) * Rational(p.y - pa.y, pb.y - pa.y);
            consider(rat_abs(ex - Rational(p.x)));
        }
    }
    return best;
}

struct ScaledDrawing {
    GridDrawing drawing;
    int multiple = 1;       // chosen multiple of the base factor
    Rational clearance{1};  // the horizontal clearance v used for the base factor
};

// Parity scaling: x -> round(x * m * 2/v) * 2, then +1 for every clause
// vertex, with m the smallest multiple for which the result is plane.
// Variables end on even x, clauses on odd x.
inline ScaledDrawing parity_scale(const IncidenceGraph& ig, const GridDrawing& d,
                                  int max_multiple = 4096) {
    if (!drawing_is_plane(ig.g, d))
        throw std::invalid_argument("parity_scale: input drawing has crossings");
    std::optional<Rational> v = horizontal_clearance(ig.g, d);
    Rational clearance = (v && v->num != 0) ? *v : Rational(1);
    Rational base = Rational(2) / clearance;
    for (int m = 1; m <= max_multiple; m = (m < 8 ? m + 1 : m * 2)) {
        GridDrawing out;
        out.pos.resize(ig.g.n());
        Rational factor = base * Rational(m);
        for (int u = 0; u < ig.g.n(); ++u) {
            Rational sx = Rational(d.pos[u].x) * factor;
            std::int64_t nx = sx.rounded() * 2;
            if (ig.g.kind[u] == VertexKind::ClauseV) nx += 1;
            out.pos[u] = {nx, d.pos[u].y};
        }
        if (drawing_is_plane(ig.g, out)) return ScaledDrawing{out, m, clearance};
    }
    throw std::runtime_error("parity_scale: no valid multiple found");
}

inline bool parity_compliant(const IncidenceGraph& ig, const GridDrawing& d) {
    for (int u = 0; u < ig.g.n(); ++u) {
        bool even = (d.pos[u].x % 2 + 2) % 2 == 0;
        if (ig.g.kind[u] == VertexKind::Variable && !even) return false;
        if (ig.g.kind[u] == VertexKind::ClauseV && even) return false;
    }
    return true;
}

enum class ColTag { VarSeg, ClauseSeg };

struct PaddingSpec {
    int pairs_after_variable_segment = 0;
    int pairs_after_clause_segment = 0;
};

// Column structure of the region R. Columns alternate V,C,V,C,... left to
// right; column i of the built drawing sits at x-coordinate i.
struct RDrawing {
    std::vector<ColTag> columns;
    std::vector<int> vertex_column;                 // per vertex
    std::vector<int> vertex_rank;                   // per vertex, bottom-up within column
    std::vector<std::vector<int>> edge_crossings;   // per edge: columns strictly between endpoints
    std::map<std::int64_t, int> original_column;    // original x -> column index
};

// Inserts padding pairs between original columns: after a variable segment
// p_v pairs of (C,V), after a clause segment p_c pairs of (V,C). The original
// x range is first extended left to an even coordinate so column 0 is a
// variable segment.
inline RDrawing build_r_drawing(const IncidenceGraph& ig, const GridDrawing& d,
                                const PaddingSpec& pad) {
    if (!parity_compliant(ig, d))
        throw std::invalid_argument("build_r_drawing: drawing is not parity scaled");
    RDrawing r;
    if (ig.g.n() == 0) return r;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const Point& p : d.pos) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    if (((lo % 2) + 2) % 2 != 0) --lo;  // start on a variable segment
    for (std::int64_t x = lo; x <= hi; ++x) {
        bool var_col = ((x - lo) % 2 == 0);
        r.original_column[x] = static_cast<int>(r.columns.size());
        r.columns.push_back(var_col ? ColTag::VarSeg : ColTag::ClauseSeg);
        if (x == hi) break;
        int pairs = var_col ? pad.pairs_after_variable_segment : pad.pairs_after_clause_segment;
        for (int i = 0; i < pairs; ++i) {
            r.columns.push_back(var_col ? ColTag::ClauseSeg : ColTag::VarSeg);
            r.columns.push_back(var_col ? ColTag::VarSeg : ColTag::ClauseSeg);
        }
    }
    r.vertex_column.resize(ig.g.n());
    for (int u = 0; u < ig.g.n(); ++u) r.vertex_column[u] = r.original_column.at(d.pos[u].x);
    // ranks: bottom-up by y, ties by vertex id
    r.vertex_rank.assign(ig.g.n(), 0);
    std::map<int, std::vector<int>> by_col;
    for (int u = 0; u < ig.g.n(); ++u) by_col[r.vertex_column[u]].push_back(u);
    for (auto& [col, vs] : by_col) {
        std::sort(vs.begin(), vs.end(), [&](int a, int b) {
            if (d.pos[a].y != d.pos[b].y) return d.pos[a].y < d.pos[b].y;
            return a < b;
        });
        for (std::size_t i = 0; i < vs.size(); ++i) r.vertex_rank[vs[i]] = static_cast<int>(i);
    }
    for (auto [a, b] : ig.g.edge_list) {
        std::vector<int> cross;
        int ca = r.vertex_column[a], cb = r.vertex_column[b];
        int step = ca < cb ? 1 : -1;
        for (int c = ca + step; c != cb; c += step) cross.push_back(c);
        r.edge_crossings.push_back(std::move(cross));
    }
    return r;
}

// Number of clause segments strictly between two columns.
inline int clause_segments_between(const RDrawing& r, int col_a, int col_b) {
    if (col_a > col_b) std::swap(col_a, col_b);
    int count = 0;
    for (int c = col_a + 1; c < col_b; ++c)
        if (r.columns[c] == ColTag::ClauseSeg) ++count;
    return count;
}

inline void write_drawing(std::ostream& os, const GridDrawing& d) {
    for (std::size_t u = 0; u < d.pos.size(); ++u)
        os << "pos " << u << ' ' << d.pos[u].x << ' ' << d.pos[u].y << '\n';
}

inline GridDrawing read_drawing(std::istream& in, int expected_vertices,
                                int* scale_out = nullptr) {
    GridDrawing d;
    d.pos.resize(expected_vertices);
    std::vector<bool> seen(expected_vertices, false);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "scale") {
            int m;
            if ((ls >> m) && scale_out) *scale_out = m;
            continue;
        }
        if (tag != "pos") throw ParseError(line_no, "unknown drawing line");
        int u;
        std::int64_t x, y;
        if (!(ls >> u >> x >> y)) throw ParseError(line_no, "bad pos line");
        if (u < 0 || u >= expected_vertices) throw ParseError(line_no, "vertex out of range");
        d.pos[u] = {x, y};
        seen[u] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("drawing: missing vertex position");
    return d;
}

// ---- three-legged layouts -------------------------------------------------

enum class Side { Above, Below };

struct LegPlacement {
    Var var = 0;
    std::size_t occurrence = 0;  // literal index within the clause
    std::int64_t attach_x = 0;
};

struct ClausePlacement {
    Side side = Side::Above;
    int level = 0;  // nesting level, 1 = innermost
    std::int64_t clause_x = 0;
    std::vector<LegPlacement> legs;
};

struct ThreeLeggedDrawing {
    std::vector<Var> order;                           // variables left to right
    std::vector<std::int64_t> interval_start;        // per variable (order index)
    std::vector<std::int64_t> interval_end;
    std::vector<ClausePlacement> clauses;            // per formula clause
};

struct NonLaminarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the three-legged layout for a formula over a variable order with
// given clause sides. Spans must be laminar per side, and no clause may have
// a leg strictly inside the span of a nested clause on the same side (the
// vertical leg would pierce the nested clause's horizontal bar).
inline ThreeLeggedDrawing three_legged_layout(const Formula& f, const std::vector<Var>& order,
                                              const std::vector<Side>& sides) {
    if (sides.size() != f.clauses.size())
        throw std::invalid_argument("three_legged_layout: one side per clause required");
    std::vector<int> pos_of(f.num_vars + 1, -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos_of[order[i]] = static_cast<int>(i);
    for (Var v = 1; v <= f.num_vars; ++v)
        if (pos_of[v] < 0) throw std::invalid_argument("three_legged_layout: order misses a variable");

    struct SpanInfo {
        int lo = 0, hi = 0, level = 0;
    };
    std::vector<SpanInfo> span(f.clauses.size());
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        if (f.clauses[c].lits.empty())
            throw std::invalid_argument("three_legged_layout: empty clause");
        int lo = f.num_vars, hi = -1;
        for (const Lit& l : f.clauses[c].lits) {
            lo = std::min(lo, pos_of[l.var]);
            hi = std::max(hi, pos_of[l.var]);
        }
        span[c] = {lo, hi, 0};
    }
    // laminar check + levels per side
    for (std::size_t a = 0; a < f.clauses.size(); ++a)
        for (std::size_t b = a + 1; b < f.clauses.size(); ++b) {
            if (sides[a] != sides[b]) continue;
            bool disjoint = span[a].hi < span[b].lo || span[b].hi < span[a].lo;
            bool a_in_b = span[b].lo <= span[a].lo && span[a].hi <= span[b].hi;
            bool b_in_a = span[a].lo <= span[b].lo && span[b].hi <= span[a].hi;
            if (!disjoint && !a_in_b && !b_in_a)
                throw NonLaminarError("three_legged_layout: interleaved spans");
        }
    auto strictly_inside = [&](std::size_t inner, std::size_t outer) {
        if (sides[inner] != sides[outer]) return false;
        if (inner == outer) return false;
        const SpanInfo& i = span[inner];
        const SpanInfo& o = span[outer];
        if (o.lo <= i.lo && i.hi <= o.hi && (o.lo < i.lo || i.hi < o.hi)) return true;
        // equal spans nest by clause index
        return o.lo == i.lo && o.hi == i.hi && inner < outer;
    };
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        int lvl = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t o = 0; o < f.clauses.size(); ++o)
                if (strictly_inside(o, c) && span[o].level >= lvl) {
                    lvl = span[o].level + 1;
                    changed = true;
                }
            span[c].level = lvl;
        }
    }
    // claw check: a leg of c may not sit strictly inside a nested clause's span
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (const Lit& l : f.clauses[c].lits) {
            int p = pos_of[l.var];
            for (std::size_t in = 0; in < f.clauses.size(); ++in)
                if (strictly_inside(in, c) && span[in].lo < p && p < span[in].hi)
                    throw NonLaminarError("three_legged_layout: leg pierces nested span");
        }

    // slot assignment inside each variable interval
    struct LegKey {
        std::size_t clause;
        std::size_t occ;
        int group;  // 0 right-end, 1 middle, 2 left-end
        int level;
    };
    std::vector<std::vector<LegKey>> legs_at(order.size());
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (std::size_t o = 0; o < f.clauses[c].lits.size(); ++o) {
            int p = pos_of[f.clauses[c].lits[o].var];
            int group = (p == span[c].hi) ? 0 : (p == span[c].lo ? 2 : 1);
            legs_at[p].push_back({c, o, group, span[c].level});
        }
    for (auto& legs : legs_at)
        std::sort(legs.begin(), legs.end(), [](const LegKey& a, const LegKey& b) {
            if (a.group != b.group) return a.group < b.group;
            if (a.group == 0) {  // right-end: inner first (left to right)
                if (a.level != b.level) return a.level < b.level;
            } else if (a.group == 2) {  // left-end: outer first
                if (a.level != b.level) return a.level > b.level;
            }
            return a.clause < b.clause;
        });

    ThreeLeggedDrawing t;
    t.order = order;
    t.interval_start.resize(order.size());
    t.interval_end.resize(order.size());
    t.clauses.resize(f.clauses.size());
    std::int64_t x = 0;
    std::vector<std::vector<std::int64_t>> leg_x(f.clauses.size());
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        leg_x[c].resize(f.clauses[c].lits.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        t.interval_start[i] = x;
        for (const LegKey& lk : legs_at[i]) {
            leg_x[lk.clause][lk.occ] = x;
            ++x;
        }
        if (legs_at[i].empty()) ++x;  // keep the interval nonempty
        t.interval_end[i] = x;
        ++x;  // gap between intervals
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        ClausePlacement& cp = t.clauses[c];
        cp.side = sides[c];
        cp.level = span[c].level;
        for (std::size_t o = 0; o < f.clauses[c].lits.size(); ++o)
            cp.legs.push_back({f.clauses[c].lits[o].var, o, leg_x[c][o]});
        std::vector<std::int64_t> xs = leg_x[c];
        std::sort(xs.begin(), xs.end());
        cp.clause_x = xs[(xs.size() - 1) / 2];
    }
    return t;
}

// Exact leg/bar intersection check over one side of a three-legged drawing.
inline bool three_legged_crossing_free(const ThreeLeggedDrawing& t) {
    struct VSeg { std::int64_t x, y; std::size_t c; };   // vertical from 0 to y at x
    struct HSeg { std::int64_t x1, x2, y; std::size_t c; };
    for (Side side : {Side::Above, Side::Below}) {
        std::vector<VSeg> vs;
        std::vector<HSeg> hs;
        for (std::size_t c = 0; c < t.clauses.size(); ++c) {
            const ClausePlacement& cp = t.clauses[c];
            if (cp.side != side) continue;
            std::int64_t lo = cp.clause_x, hi = cp.clause_x;
            for (const LegPlacement& leg : cp.legs) {
                vs.push_back({leg.attach_x, cp.level, c});
                lo = std::min(lo, leg.attach_x);
                hi = std::max(hi, leg.attach_x);
            }
            hs.push_back({lo, hi, cp.level, c});
        }
        for (const VSeg& v : vs)
            for (const HSeg& h : hs) {
                if (v.c == h.c) continue;
                if (h.x1 < v.x && v.x < h.x2 && h.y <= v.y) return false;
                if ((v.x == h.x1 || v.x == h.x2) && h.y < v.y) return false;
            }
        for (const VSeg& a : vs)
            for (const VSeg& b : vs)
                if (a.c != b.c && a.x == b.x) return false;
        for (const HSeg& a : hs)
            for (const HSeg& b : hs)
                if (a.c < b.c && a.y == b.y && !(a.x2 < b.x1 || b.x2 < a.x1)) return false;
    }
    return true;
}

}  // namespace plsat
