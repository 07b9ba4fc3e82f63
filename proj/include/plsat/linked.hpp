#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/gadgets.hpp"
#include "plsat/graph.hpp"
#include "plsat/layout.hpp"
#include "plsat/planarity.hpp"

namespace plsat {

struct GadgetRecord {
    GadgetKind kind = GadgetKind::Basic;
    Var orig_var = 0;     // variable endpoint of the replaced edge (original id)
    int orig_clause = -1; // clause endpoint (original index)
    Var in_port = 0;
    Var out_port = 0;
    std::vector<Var> fresh_vars;
    std::vector<int> clause_indices;
};

struct Provenance {
    GadgetKind variant = GadgetKind::Basic;
    int original_vars = 0;
    std::vector<int> original_clause_of;  // output clause index -> original index, -1 for gadget clauses
    std::vector<GadgetRecord> gadgets;
    std::map<Var, std::string> var_names;  // fresh variables: g<gadget#>_<template>
    int scale_multiple = 1;
};

// Reduction output: formula, Hamiltonian order kappa (all clauses, then all
// variables), the column structure of the R-drawing, and provenance.
struct LinkedInstance {
    Formula formula;
    std::vector<int> kappa_clauses;  // 0-based clause indices in kappa_C order
    std::vector<Var> kappa_vars;     // variable ids in kappa_V order
    std::vector<ColTag> columns;
    std::vector<int> vertex_column;  // per incidence vertex: vars 0..N-1, clauses N..N+M-1
    std::vector<int> vertex_rank;
    Provenance prov;

    int num_vars() const { return formula.num_vars; }
    int num_clauses() const { return static_cast<int>(formula.clauses.size()); }
    int var_vertex(Var v) const { return v - 1; }
    int clause_vertex(int c) const { return formula.num_vars + c; }

    CycleSpec kappa_cycle() const {
        CycleSpec k;
        for (int c : kappa_clauses) k.vertices.push_back(clause_vertex(c));
        for (Var v : kappa_vars) k.vertices.push_back(var_vertex(v));
        return k;
    }
};

inline void write_linked(std::ostream& os, const LinkedInstance& li) {
    os << "[formula]\n";
    write_dimacs(os, li.formula);
    os << "[kappa]\n";
    os << "clauses:";
    for (int c : li.kappa_clauses) os << ' ' << c + 1;
    os << "\nvars:";
    for (Var v : li.kappa_vars) os << ' ' << v;
    os << "\n[columns]\n";
    for (std::size_t i = 0; i < li.columns.size(); ++i)
        os << "col " << i << ' ' << (li.columns[i] == ColTag::VarSeg ? 'V' : 'C') << '\n';
    os << "[positions]\n";
    for (Var v = 1; v <= li.formula.num_vars; ++v) {
        int u = li.var_vertex(v);
        os << "pos v " << v << ' ' << li.vertex_column[u] << ' ' << li.vertex_rank[u] << '\n';
    }
    for (int c = 0; c < li.num_clauses(); ++c) {
        int u = li.clause_vertex(c);
        os << "pos c " << c + 1 << ' ' << li.vertex_column[u] << ' ' << li.vertex_rank[u] << '\n';
    }
    os << "[provenance]\n";
    os << "variant " << gadget_name(li.prov.variant) << '\n';
    os << "scale " << li.prov.scale_multiple << '\n';
    os << "origvars " << li.prov.original_vars << '\n';
    for (std::size_t c = 0; c < li.prov.original_clause_of.size(); ++c)
        if (li.prov.original_clause_of[c] >= 0)
            os << "origclause " << c + 1 << ' ' << li.prov.original_clause_of[c] + 1 << '\n';
    for (std::size_t gi = 0; gi < li.prov.gadgets.size(); ++gi) {
        const GadgetRecord& g = li.prov.gadgets[gi];
        os << "gadget " << gi << ' ' << gadget_name(g.kind) << " var " << g.orig_var << " clause "
           << g.orig_clause + 1 << " in " << g.in_port << " out " << g.out_port << " fresh";
        for (Var v : g.fresh_vars) os << ' ' << v;
        os << " clauses";
        for (int c : g.clause_indices) os << ' ' << c + 1;
        os << '\n';
    }
    for (const auto& [v, name] : li.prov.var_names) os << "name " << v << ' ' << name << '\n';
}

inline std::string to_text(const LinkedInstance& li) {
    std::ostringstream os;
    write_linked(os, li);
    return os.str();
}

inline GadgetKind gadget_kind_from(const std::string& s) {
    for (GadgetKind k : {GadgetKind::Basic, GadgetKind::OneInThree, GadgetKind::ThreeDistinct,
                         GadgetKind::Monotone, GadgetKind::MonotoneDeg3, GadgetKind::SideCycle})
        if (s == gadget_name(k)) return k;
    throw std::invalid_argument("unknown gadget kind: " + s);
}

inline LinkedInstance read_linked(std::istream& in) {
    LinkedInstance li;
    std::string line;
    std::string section;
    int line_no = 0;
    std::ostringstream formula_text;
    std::map<int, std::pair<int, int>> var_pos, clause_pos;
    std::vector<std::string> prov_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '[') {
            if (line == "[formula]" || line == "[kappa]" || line == "[columns]" ||
                line == "[positions]" || line == "[provenance]")
                section = line;
            else
                throw ParseError(line_no, "unknown section " + line);
            continue;
        }
        if (section == "[formula]") {
            formula_text << line << '\n';
        } else if (section == "[kappa]") {
            std::istringstream ls(line);
            std::string tag;
            ls >> tag;
            int id;
            if (tag == "clauses:")
                while (ls >> id) li.kappa_clauses.push_back(id - 1);
            else if (tag == "vars:")
                while (ls >> id) li.kappa_vars.push_back(id);
            else
                throw ParseError(line_no, "bad kappa line");
        } else if (section == "[columns]") {
            std::istringstream ls(line);
            std::string tag;
            int idx;
            char t;
            if (!(ls >> tag >> idx >> t) || tag != "col") throw ParseError(line_no, "bad column line");
            li.columns.push_back(t == 'V' ? ColTag::VarSeg : ColTag::ClauseSeg);
        } else if (section == "[positions]") {
            std::istringstream ls(line);
            std::string tag, kindtag;
            int id, col, rank;
            if (!(ls >> tag >> kindtag >> id >> col >> rank) || tag != "pos")
                throw ParseError(line_no, "bad position line");
            if (kindtag == "v")
                var_pos[id] = {col, rank};
            else
                clause_pos[id - 1] = {col, rank};
        } else if (section == "[provenance]") {
            prov_lines.push_back(line);
        } else {
            throw ParseError(line_no, "content before first section");
        }
    }
    li.formula = parse_dimacs(formula_text.str());
    li.vertex_column.assign(li.formula.num_vars + li.formula.clauses.size(), 0);
    li.vertex_rank.assign(li.vertex_column.size(), 0);
    for (auto [v, cr] : var_pos) {
        li.vertex_column[li.var_vertex(v)] = cr.first;
        li.vertex_rank[li.var_vertex(v)] = cr.second;
    }
    for (auto [c, cr] : clause_pos) {
        li.vertex_column[li.clause_vertex(c)] = cr.first;
        li.vertex_rank[li.clause_vertex(c)] = cr.second;
    }
    li.prov.original_clause_of.assign(li.formula.clauses.size(), -1);
    for (const std::string& pl : prov_lines) {
        std::istringstream ls(pl);
        std::string tag;
        ls >> tag;
        if (tag == "variant") {
            std::string name;
            ls >> name;
            li.prov.variant = gadget_kind_from(name);
        } else if (tag == "scale") {
            ls >> li.prov.scale_multiple;
        } else if (tag == "origvars") {
            ls >> li.prov.original_vars;
        } else if (tag == "origclause") {
            int out, orig;
            ls >> out >> orig;
            li.prov.original_clause_of[out - 1] = orig - 1;
        } else if (tag == "gadget") {
            GadgetRecord g;
            int id;
            std::string kind, w;
            ls >> id >> kind;
            g.kind = gadget_kind_from(kind);
            std::vector<int> fresh, clauses;
            std::vector<int>* sink = nullptr;
            while (ls >> w) {
                if (w == "var") { ls >> g.orig_var; sink = nullptr; }
                else if (w == "clause") { ls >> g.orig_clause; --g.orig_clause; sink = nullptr; }
                else if (w == "in") { ls >> g.in_port; sink = nullptr; }
                else if (w == "out") { ls >> g.out_port; sink = nullptr; }
                else if (w == "fresh") sink = &fresh;
                else if (w == "clauses") sink = &clauses;
                else if (sink) sink->push_back(std::stoi(w));
                else throw std::invalid_argument("bad gadget record: " + pl);
            }
            for (int v : fresh) g.fresh_vars.push_back(v);
            for (int c : clauses) g.clause_indices.push_back(c - 1);
            li.prov.gadgets.push_back(g);
        } else if (tag == "name") {
            Var v;
            std::string name;
            ls >> v >> name;
            li.prov.var_names[v] = name;
        } else {
            throw std::invalid_argument("unknown provenance line: " + pl);
        }
    }
    return li;
}

}  // namespace plsat
