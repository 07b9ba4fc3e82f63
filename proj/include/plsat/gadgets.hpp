#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/count.hpp"
#include "plsat/formula.hpp"

namespace plsat {

enum class GadgetKind { Basic, OneInThree, ThreeDistinct, Monotone, MonotoneDeg3, SideCycle };

inline const char* gadget_name(GadgetKind k) {
    switch (k) {
        case GadgetKind::Basic: return "basic";
        case GadgetKind::OneInThree: return "one-in-three";
        case GadgetKind::ThreeDistinct: return "three-distinct";
        case GadgetKind::Monotone: return "monotone";
        case GadgetKind::MonotoneDeg3: return "monotone-deg3";
        case GadgetKind::SideCycle: return "side-cycle";
    }
    return "?";
}

// Forced port relation of a connector: ports are always equal in every
// satisfying assignment; the multipliers give the number of internal
// assignments per fixed port value.
struct ForcedRelation {
    bool ports_equal = true;
    std::uint64_t multiplier_port_true = 1;
    std::uint64_t multiplier_port_false = 1;
    Semantics semantics = Semantics::Cnf;
};

inline ForcedRelation forced_relation(GadgetKind k) {
    switch (k) {
        case GadgetKind::Basic: return {true, 1, 1, Semantics::Cnf};
        case GadgetKind::OneInThree: return {true, 1, 2, Semantics::OneInThree};
        case GadgetKind::ThreeDistinct: return {true, 16, 16, Semantics::Cnf};
        case GadgetKind::Monotone: return {true, 1, 1, Semantics::Cnf};
        case GadgetKind::MonotoneDeg3: return {true, 1, 1, Semantics::Cnf};
        case GadgetKind::SideCycle: return {true, 1, 1, Semantics::Cnf};
    }
    throw std::logic_error("unknown gadget kind");
}

// Columns a single connector spans (ports sit on the outermost variable
// segments). The parameterized gadgets report the default parameter's width.
inline int gadget_width(GadgetKind k, int param = 0) {
    switch (k) {
        case GadgetKind::Basic: return 2;
        case GadgetKind::OneInThree:
        case GadgetKind::ThreeDistinct:
        case GadgetKind::Monotone: return 4;
        case GadgetKind::MonotoneDeg3: return param > 0 ? param : 4;
        case GadgetKind::SideCycle: return 2 * (param > 0 ? param : 2);
    }
    throw std::logic_error("unknown gadget kind");
}

struct GadgetInstantiation {
    GadgetKind kind = GadgetKind::Basic;
    Var in_port = 0;
    Var out_port = 0;
    std::map<std::string, Var> vars;          // template name -> variable id (ports included)
    std::vector<std::size_t> clause_indices;  // indices appended to the formula
    std::map<std::string, std::size_t> clause_of;  // template clause name -> formula index
    std::map<std::string, int> column_of;     // template element -> column offset from in_port
};

// Appends one connector gadget to f. in_port must already exist; fresh
// internals and the out port are allocated from f. direction +1 places the
// gadget to the right of the anchor, -1 to the left. param is the chain
// variable count for MONOTONE_DEG3 (even, >= 4) and k for SIDE_CYCLE.
inline GadgetInstantiation instantiate(GadgetKind kind, Formula& f, Var in_port, int direction = 1,
                                       int param = 0) {
    if (!f.valid_var(in_port)) throw std::invalid_argument("instantiate: unknown in port");
    if (direction != 1 && direction != -1) throw std::invalid_argument("instantiate: direction");
    GadgetInstantiation g;
    g.kind = kind;
    g.in_port = in_port;
    g.vars["x"] = in_port;
    g.column_of["x"] = 0;
    auto fresh = [&](const std::string& name, int col) {
        Var v = f.fresh_var();
        g.vars[name] = v;
        g.column_of[name] = col * direction;
        return v;
    };
    auto clause = [&](std::vector<Lit> lits, const std::string& name, int col) {
        g.clause_of[name] = f.clauses.size();
        g.clause_indices.push_back(f.clauses.size());
        f.add_clause(std::move(lits));
        g.column_of[name] = col * direction;
    };
    switch (kind) {
        case GadgetKind::Basic: {
            Var xp = fresh("x'", 2);
            clause({neg_lit(in_port), pos_lit(xp)}, "c_x", 1);
            clause({pos_lit(in_port), neg_lit(xp)}, "c_x'", 1);
            g.out_port = xp;
            break;
        }
        case GadgetKind::OneInThree: {
            Var a = fresh("a", 2), b = fresh("b", 2), xp = fresh("x'", 4);
            clause({pos_lit(in_port), pos_lit(a), pos_lit(b)}, "c1", 1);
            clause({pos_lit(xp), pos_lit(a), pos_lit(b)}, "c2", 3);
            g.out_port = xp;
            break;
        }
        case GadgetKind::ThreeDistinct: {
            Var a = fresh("a", 2), u = fresh("u", 2), b = fresh("b", 2);
            Var ap = fresh("a'", 2), up = fresh("u'", 2), bp = fresh("b'", 2);
            Var xp = fresh("x'", 4);
            Var x = in_port;
            clause({neg_lit(x), pos_lit(a), pos_lit(u)}, "k1", 1);
            clause({pos_lit(xp), neg_lit(a), pos_lit(u)}, "m1", 3);
            clause({neg_lit(x), pos_lit(b), neg_lit(u)}, "k2", 1);
            clause({pos_lit(xp), neg_lit(b), neg_lit(u)}, "m2", 3);
            clause({neg_lit(xp), pos_lit(ap), pos_lit(up)}, "m3", 3);
            clause({pos_lit(x), neg_lit(ap), pos_lit(up)}, "k3", 1);
            clause({neg_lit(xp), pos_lit(bp), neg_lit(up)}, "m4", 3);
            clause({pos_lit(x), neg_lit(bp), neg_lit(up)}, "k4", 1);
            g.out_port = xp;
            break;
        }
        case GadgetKind::Monotone: {
            Var xbar = fresh("xbar", 2), xp = fresh("x'", 4);
            clause({pos_lit(in_port), pos_lit(xbar)}, "d1", 1);
            clause({neg_lit(in_port), neg_lit(xbar)}, "d2", 1);
            clause({pos_lit(xbar), pos_lit(xp)}, "d3", 3);
            clause({neg_lit(xbar), neg_lit(xp)}, "d4", 3);
            g.out_port = xp;
            break;
        }
        case GadgetKind::MonotoneDeg3: {
            // cycle of monotone 2-clauses; every second variable equal
            int len = param > 0 ? param : 4;
            if (len < 4 || len % 2 != 0)
                throw std::invalid_argument("monotone-deg3 chain length must be even and >= 4");
            std::vector<Var> y(len);
            y[0] = in_port;
            for (int i = 1; i < len; ++i) y[i] = fresh("y" + std::to_string(i), i);
            for (int i = 0; i < len; ++i) {
                Var a = y[i], b = y[(i + 1) % len];
                if (i % 2 == 0)
                    clause({neg_lit(a), neg_lit(b)}, "q" + std::to_string(i), i);
                else
                    clause({pos_lit(a), pos_lit(b)}, "q" + std::to_string(i), i);
            }
            g.out_port = y[len - 2];  // even index, same value as y0
            break;
        }
        case GadgetKind::SideCycle: {
            int k = param > 0 ? param : 2;
            if (k < 1) throw std::invalid_argument("side-cycle size must be >= 1");
            std::vector<Var> x(k + 1), xbar(k + 1);
            x[1] = in_port;
            for (int i = 2; i <= k; ++i) x[i] = fresh("x" + std::to_string(i), 2 * (i - 1));
            for (int i = 1; i <= k; ++i) xbar[i] = fresh("xbar" + std::to_string(i), 2 * (i - 1));
            for (int i = 1; i < k; ++i) {
                clause({neg_lit(x[i]), pos_lit(x[i + 1])}, "cb" + std::to_string(i), 2 * i - 1);
                clause({neg_lit(xbar[i]), pos_lit(xbar[i + 1])}, "ct" + std::to_string(i),
                       2 * i - 1);
            }
            clause({pos_lit(x[1]), pos_lit(xbar[1])}, "eL", -1);
            clause({neg_lit(x[k]), neg_lit(xbar[k])}, "eR", 2 * k - 1);
            g.out_port = x[k];
            break;
        }
    }
    return g;
}

// Structured-text catalog dump used by documentation and golden tests.
inline std::string gadget_catalog_dump() {
    std::ostringstream os;
    for (GadgetKind k : {GadgetKind::Basic, GadgetKind::OneInThree, GadgetKind::ThreeDistinct,
                         GadgetKind::Monotone, GadgetKind::MonotoneDeg3, GadgetKind::SideCycle}) {
        Formula f;
        Var x = f.fresh_var();
        GadgetInstantiation g = instantiate(k, f, x);
        ForcedRelation fr = forced_relation(k);
        os << "gadget " << gadget_name(k) << " width " << gadget_width(k) << '\n';
        std::map<Var, std::string> names;
        for (const auto& [name, var] : g.vars) names[var] = name;
        for (std::size_t ci : g.clause_indices) {
            os << "  clause";
            for (const Lit& l : f.clauses[ci].lits) os << ' ' << (l.neg ? "-" : "") << names[l.var];
            os << '\n';
        }
        os << "  forces ports-equal multiplier " << fr.multiplier_port_true << '/'
           << fr.multiplier_port_false;
        if (fr.semantics == Semantics::OneInThree) os << " (1-in-3)";
        os << '\n';
    }
    return os.str();
}

}  // namespace plsat
