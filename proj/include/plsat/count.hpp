#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "plsat/formula.hpp"

namespace plsat {

enum class Semantics { Cnf, OneInThree };

// Total assignment; index 0 unused.
struct Assignment {
    std::vector<bool> value;

    explicit Assignment(int num_vars = 0) : value(num_vars + 1, false) {}
    bool operator[](Var v) const { return value[v]; }
    void set(Var v, bool b) { value[v] = b; }
};

inline bool eval_clause(const Clause& c, const Assignment& a, Semantics sem) {
    int true_lits = 0;
    for (const Lit& l : c.lits) {
        bool val = a[l.var] != l.neg;
        if (val) {
            if (sem == Semantics::Cnf) return true;
            ++true_lits;
        }
    }
    return sem == Semantics::Cnf ? false : true_lits == 1;
}

inline bool evaluate(const Formula& f, const Assignment& a, Semantics sem = Semantics::Cnf) {
    for (const Clause& c : f.clauses)
        if (!eval_clause(c, a, sem)) return false;
    return true;
}

inline void write_assignment(std::ostream& os, const Assignment& a, int num_vars) {
    os << 'v';
    for (Var v = 1; v <= num_vars; ++v) os << ' ' << (a[v] ? v : -v);
    os << " 0\n";
}

constexpr int kBruteForceVarCap = 26;

// Exhaustive enumeration with a hard cap on the variable count.
inline std::uint64_t brute_count(const Formula& f, Semantics sem = Semantics::Cnf) {
    if (f.num_vars > kBruteForceVarCap)
        throw std::invalid_argument("brute_count: variable cap exceeded");
    std::uint64_t count = 0;
    Assignment a(f.num_vars);
    const std::uint64_t total = 1ull << f.num_vars;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (Var v = 1; v <= f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
        if (evaluate(f, a, sem)) ++count;
    }
    return count;
}

inline std::optional<Assignment> brute_solve(const Formula& f, Semantics sem = Semantics::Cnf) {
    if (f.num_vars > kBruteForceVarCap)
        throw std::invalid_argument("brute_solve: variable cap exceeded");
    Assignment a(f.num_vars);
    const std::uint64_t total = 1ull << f.num_vars;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (Var v = 1; v <= f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
        if (evaluate(f, a, sem)) return a;
    }
    return std::nullopt;
}

// 1-in-3 semantics as plain CNF over the same variables: the disjunction plus
// pairwise exclusions.
inline Formula one_in_three_to_cnf(const Formula& f) {
    Formula out;
    out.num_vars = f.num_vars;
    for (const Clause& c : f.clauses) {
        out.clauses.push_back(c);
        for (std::size_t i = 0; i < c.lits.size(); ++i)
            for (std::size_t j = i + 1; j < c.lits.size(); ++j) {
                Lit a = c.lits[i], b = c.lits[j];
                out.clauses.push_back(Clause{{Lit{a.var, !a.neg}, Lit{b.var, !b.neg}}});
            }
    }
    return out;
}

namespace detail_count {

// DPLL-style exact counter with unit propagation. Reduction outputs force all
// gadget internals once the original variables are fixed, so clause-based
// branching keeps this fast even on instances far past the enumeration cap.
struct Counter {
    const Formula& f;
    std::vector<int8_t> assign;  // -1 unknown, 0 false, 1 true
    std::vector<std::vector<int>> occ;

    explicit Counter(const Formula& form) : f(form), assign(form.num_vars + 1, -1) {
        occ.resize(form.num_vars + 1);
        for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
            for (const Lit& l : f.clauses[ci].lits) occ[l.var].push_back(static_cast<int>(ci));
    }

    // 1 satisfied, 0 falsified, -1 undecided (sets unit if exactly one free literal)
    int clause_state(int ci, Lit* unit) const {
        int free_count = 0;
        Lit last{};
        for (const Lit& l : f.clauses[ci].lits) {
            if (assign[l.var] == -1) {
                ++free_count;
                last = l;
            } else if ((assign[l.var] == 1) != l.neg) {
                return 1;
            }
        }
        if (free_count == 0) return 0;
        if (free_count == 1 && unit) *unit = last;
        return -1;
    }

    std::uint64_t count() {
        std::vector<Var> trail;
        // unit propagation
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
                Lit unit{};
                int st = clause_state(static_cast<int>(ci), &unit);
                if (st == 0) {
                    for (Var v : trail) assign[v] = -1;
                    return 0;
                }
                if (st == -1 && unit.var != 0) {
                    assign[unit.var] = unit.neg ? 0 : 1;
                    trail.push_back(unit.var);
                    changed = true;
                }
            }
        }
        // pick a branching variable from an undecided clause
        Var branch = 0;
        bool all_satisfied = true;
        for (std::size_t ci = 0; ci < f.clauses.size() && branch == 0; ++ci) {
            int st = clause_state(static_cast<int>(ci), nullptr);
            if (st == 0) {
                all_satisfied = false;
                break;
            }
            if (st == -1) {
                all_satisfied = false;
                for (const Lit& l : f.clauses[ci].lits)
                    if (assign[l.var] == -1) {
                        branch = l.var;
                        break;
                    }
            }
        }
        std::uint64_t result;
        if (branch == 0) {
            if (all_satisfied) {
                int free_vars = 0;
                for (Var v = 1; v <= f.num_vars; ++v)
                    if (assign[v] == -1) ++free_vars;
                result = 1ull << free_vars;
            } else {
                result = 0;
            }
        } else {
            assign[branch] = 0;
            result = count();
            assign[branch] = 1;
            result += count();
            assign[branch] = -1;
        }
        for (Var v : trail) assign[v] = -1;
        return result;
    }
};

}  // namespace detail_count

// Exact model count without the enumeration cap; propagation-based, intended
// for reduction outputs whose gadget variables are forced by the ports.
inline std::uint64_t exact_count(const Formula& f, Semantics sem = Semantics::Cnf) {
    if (sem == Semantics::OneInThree) return exact_count(one_in_three_to_cnf(f), Semantics::Cnf);
    for (const Clause& c : f.clauses)
        if (c.lits.empty()) return 0;
    detail_count::Counter counter(f);
    return counter.count();
}

namespace detail_count {

inline bool dpll_solve(const Formula& f, std::vector<int8_t>& assign) {
    bool changed = true;
    std::vector<Var> trail;
    while (changed) {
        changed = false;
        for (const Clause& c : f.clauses) {
            int free_count = 0;
            bool satisfied = false;
            Lit unit{};
            for (const Lit& l : c.lits) {
                if (assign[l.var] == -1) {
                    ++free_count;
                    unit = l;
                } else if ((assign[l.var] == 1) != l.neg) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (free_count == 0) {
                for (Var v : trail) assign[v] = -1;
                return false;
            }
            if (free_count == 1) {
                assign[unit.var] = unit.neg ? 0 : 1;
                trail.push_back(unit.var);
                changed = true;
            }
        }
    }
    Var branch = 0;
    for (const Clause& c : f.clauses) {
        bool satisfied = false;
        Var candidate = 0;
        for (const Lit& l : c.lits) {
            if (assign[l.var] == -1) {
                if (!candidate) candidate = l.var;
            } else if ((assign[l.var] == 1) != l.neg) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied && candidate) {
            branch = candidate;
            break;
        }
    }
    if (branch == 0) return true;  // every clause satisfied
    for (int8_t val : {int8_t{0}, int8_t{1}}) {
        assign[branch] = val;
        if (dpll_solve(f, assign)) return true;
    }
    assign[branch] = -1;
    for (Var v : trail) assign[v] = -1;
    return false;
}

}  // namespace detail_count

inline std::optional<Assignment> exact_solve(const Formula& f, Semantics sem = Semantics::Cnf) {
    if (sem == Semantics::OneInThree) {
        Formula cnf = one_in_three_to_cnf(f);
        auto res = exact_solve(cnf, Semantics::Cnf);
        return res;
    }
    for (const Clause& c : f.clauses)
        if (c.lits.empty()) return std::nullopt;
    std::vector<int8_t> assign(f.num_vars + 1, -1);
    if (!detail_count::dpll_solve(f, assign)) return std::nullopt;
    Assignment a(f.num_vars);
    for (Var v = 1; v <= f.num_vars; ++v) a.set(v, assign[v] == 1);
    return a;
}

inline bool exact_satisfiable(const Formula& f, Semantics sem = Semantics::Cnf) {
    return exact_solve(f, sem).has_value();
}

}  // namespace plsat
