#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "plsat/formula.hpp"

using namespace plsat;

TEST_CASE("dimacs parse basics") {
    Formula f = parse_dimacs("p cnf 2 1\n1 -2 0\n");
    REQUIRE(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0].lits == std::vector<Lit>{pos_lit(1), neg_lit(2)});

    Formula empty = parse_dimacs("p cnf 3 0\n");
    CHECK(empty.num_vars == 3);
    CHECK(empty.clauses.empty());
}

TEST_CASE("dimacs parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("1 0\np cnf 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1\n"), ParseError);
    try {
        parse_dimacs("p cnf 1 1\n2 0\n");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("comments and blank lines are skipped") {
    Formula f = parse_dimacs("c hello\n\np cnf 2 2\nc mid\n1 2 0\n-1 -2 0\n");
    CHECK(f.clauses.size() == 2);
}

TEST_CASE("classify flags") {
    // (x1 v x2 v x3) & (-x1 v -x2 v -x3)
    Formula f;
    f.num_vars = 3;
    f.add_clause({pos_lit(1), pos_lit(2), pos_lit(3)});
    f.add_clause({neg_lit(1), neg_lit(2), neg_lit(3)});
    ClassFlags c = classify(f);
    CHECK(c.monotone);
    CHECK_FALSE(c.positive);
    CHECK(c.exactly_three_distinct);
    CHECK(c.is_3sat);
    CHECK(c.max_occurrence == 2);

    // duplicate literal: only two distinct variables
    Formula g;
    g.num_vars = 2;
    g.add_clause({pos_lit(1), pos_lit(1), pos_lit(2)});
    CHECK_FALSE(classify(g).exactly_three_distinct);
    CHECK(classify(g).is_3sat);

    // basic connector gadget clauses: (-x v x') & (x v -x')
    Formula h;
    h.num_vars = 2;
    h.add_clause({neg_lit(1), pos_lit(2)});
    h.add_clause({pos_lit(1), neg_lit(2)});
    CHECK(classify(h).is_3sat);
    CHECK_FALSE(classify(h).monotone);
}

TEST_CASE("classify implications hold") {
    Formula f;
    f.num_vars = 3;
    f.add_clause({pos_lit(1), pos_lit(2), pos_lit(3)});
    ClassFlags c = classify(f);
    CHECK(c.positive);
    CHECK(c.monotone);  // positive implies monotone
}

TEST_CASE("substitute occurrence") {
    // clause (v1 v v3 v -v4), replace v4 -> v5
    Formula f;
    f.num_vars = 5;
    f.add_clause({pos_lit(1), pos_lit(3), neg_lit(4)});
    Formula g = substitute_occurrence(f, 0, 4, 5);
    CHECK(g.clauses[0].lits == std::vector<Lit>{pos_lit(1), pos_lit(3), neg_lit(5)});
    CHECK(g.clauses[0].lits.size() == f.clauses[0].lits.size());

    // identity substitution
    Formula h = substitute_occurrence(f, 0, 4, 4);
    CHECK(h == f);

    // absent variable
    CHECK_THROWS_AS(substitute_occurrence(f, 0, 2, 5), std::invalid_argument);
}

TEST_CASE("dimacs round trip on random formulas") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Formula f;
        f.num_vars = 1 + static_cast<int>(rng() % 9);
        int m = static_cast<int>(rng() % 12);
        for (int c = 0; c < m; ++c) {
            std::vector<Lit> lits;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < len; ++i)
                lits.push_back(Lit{static_cast<Var>(1 + rng() % f.num_vars), (rng() & 1) != 0});
            f.add_clause(lits);
        }
        Formula back = parse_dimacs(to_dimacs(f));
        REQUIRE(back == f);
        // serialization is byte stable
        CHECK(to_dimacs(back) == to_dimacs(f));
    }
}
