#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plsat {

using Var = int;  // dense positive ids, 1..num_vars

// One occurrence of a variable in a clause. neg=true means the literal is
// negated. Duplicate occurrences of the same variable inside a clause are
// representable; distinctness is a classification concern, not an invariant.
struct Lit {
    Var var = 0;
    bool neg = false;

    friend bool operator==(const Lit&, const Lit&) = default;
};

inline Lit pos_lit(Var v) { return Lit{v, false}; }
inline Lit neg_lit(Var v) { return Lit{v, true}; }

struct Clause {
    std::vector<Lit> lits;  // insertion order preserved

    bool contains_var(Var v) const {
        for (const Lit& l : lits)
            if (l.var == v) return true;
        return false;
    }
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Formula {
    int num_vars = 0;  // variables are 1..num_vars
    std::vector<Clause> clauses;

    bool valid_var(Var v) const { return v >= 1 && v <= num_vars; }

    Var fresh_var() { return ++num_vars; }

    void add_clause(std::vector<Lit> ls) {
        for (const Lit& l : ls)
            if (!valid_var(l.var)) throw std::out_of_range("clause references unknown variable");
        clauses.push_back(Clause{std::move(ls)});
    }

    bool has_empty_clause() const {
        for (const Clause& c : clauses)
            if (c.lits.empty()) return true;
        return false;
    }

    friend bool operator==(const Formula&, const Formula&) = default;
};

struct ClassFlags {
    bool is_3sat = false;                // <= 3 literals per clause
    bool exactly_three_distinct = false; // every clause has exactly 3 distinct variables
    bool monotone = false;               // every clause all-negated or all-unnegated
    bool positive = false;               // no negations anywhere
    int max_occurrence = 0;              // max #clauses any variable appears in

    friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

inline ClassFlags classify(const Formula& f) {
    ClassFlags flags;
    flags.is_3sat = true;
    flags.exactly_three_distinct = true;
    flags.monotone = true;
    flags.positive = true;
    std::vector<int> occ(f.num_vars + 1, 0);
    for (const Clause& c : f.clauses) {
        if (c.lits.size() > 3) flags.is_3sat = false;
        std::set<Var> distinct;
        bool any_pos = false, any_neg = false;
        for (const Lit& l : c.lits) {
            distinct.insert(l.var);
            (l.neg ? any_neg : any_pos) = true;
        }
        if (distinct.size() != 3) flags.exactly_three_distinct = false;
        if (any_pos && any_neg) flags.monotone = false;
        if (any_neg) flags.positive = false;
        for (Var v : distinct) occ[v]++;
    }
    for (int v = 1; v <= f.num_vars; ++v)
        flags.max_occurrence = std::max(flags.max_occurrence, occ[v]);
    if (!flags.is_3sat) flags.exactly_three_distinct = false;
    return flags;
}

// Replaces the occurrence of `old_var` in clause `clause_idx` by `new_var`,
// polarity preserved. A duplicated literal travels along the same incidence
// edge, so all occurrences of old_var in that clause are rewired together.
inline Formula substitute_occurrence(Formula f, std::size_t clause_idx, Var old_var, Var new_var) {
    if (clause_idx >= f.clauses.size()) throw std::out_of_range("clause index out of range");
    if (!f.valid_var(new_var)) throw std::out_of_range("new variable unknown");
    Clause& c = f.clauses[clause_idx];
    if (!c.contains_var(old_var)) throw std::invalid_argument("variable absent from clause");
    for (Lit& l : c.lits)
        if (l.var == old_var) l.var = new_var;
    return f;
}

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

// DIMACS CNF. Comment lines start with 'c'; header `p cnf <nvars> <nclauses>`;
// clauses are signed ints terminated by 0. Clause count must match the header.
inline Formula parse_dimacs(std::istream& in) {
    Formula f;
    int declared_clauses = -1;
    int line_no = 0;
    std::string line;
    std::vector<Lit> current;
    bool header_seen = false;
    int header_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (header_seen) throw ParseError(line_no, "duplicate header");
            std::istringstream hs(line);
            std::string p, cnf;
            if (!(hs >> p >> cnf >> f.num_vars >> declared_clauses) || cnf != "cnf" ||
                f.num_vars < 0 || declared_clauses < 0)
                throw ParseError(line_no, "malformed header");
            header_seen = true;
            header_line = line_no;
            continue;
        }
        if (!header_seen) throw ParseError(line_no, "clause before header");
        std::istringstream ls(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(Clause{current});
                current.clear();
            } else {
                Var v = static_cast<Var>(lit < 0 ? -lit : lit);
                if (v > f.num_vars) throw ParseError(line_no, "literal out of range");
                current.push_back(Lit{v, lit < 0});
            }
        }
        std::string trailing;
        ls.clear();
        if (ls >> trailing) throw ParseError(line_no, "junk in clause line");
    }
    if (!header_seen) throw ParseError(line_no, "missing header");
    if (!current.empty()) throw ParseError(line_no, "unterminated clause");
    if (static_cast<int>(f.clauses.size()) != declared_clauses)
        throw ParseError(header_line, "clause count mismatch");
    return f;
}

inline Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

// Byte-stable: stored clause order, stored literal order, single spaces,
// trailing 0, newline-terminated.
inline void write_dimacs(std::ostream& os, const Formula& f) {
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        for (const Lit& l : c.lits) os << (l.neg ? -l.var : l.var) << ' ';
        os << "0\n";
    }
}

inline std::string to_dimacs(const Formula& f) {
    std::ostringstream os;
    write_dimacs(os, f);
    return os.str();
}

}  // namespace plsat
