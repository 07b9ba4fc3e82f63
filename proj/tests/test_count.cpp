#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plsat/count.hpp"
#include "plsat/formula.hpp"

using namespace plsat;

TEST_CASE("brute count basics") {
    Formula f;
    f.num_vars = 2;
    f.add_clause({pos_lit(1), pos_lit(2)});
    CHECK(brute_count(f) == 3);

    Formula empty;
    empty.num_vars = 5;
    CHECK(brute_count(empty) == 32);

    Formula capped;
    capped.num_vars = 27;
    CHECK_THROWS_AS(brute_count(capped), std::invalid_argument);
}

TEST_CASE("one-in-three semantics") {
    Formula f;
    f.num_vars = 3;
    f.add_clause({pos_lit(1), pos_lit(2), pos_lit(3)});
    CHECK(brute_count(f, Semantics::OneInThree) == 3);
    CHECK(brute_count(f, Semantics::Cnf) == 7);

    auto a = brute_solve(f, Semantics::OneInThree);
    REQUIRE(a.has_value());
    CHECK(evaluate(f, *a, Semantics::OneInThree));
}

TEST_CASE("unsat detection") {
    Formula f;
    f.num_vars = 1;
    f.add_clause({pos_lit(1)});
    f.add_clause({neg_lit(1)});
    CHECK_FALSE(brute_solve(f).has_value());
    CHECK(brute_count(f) == 0);
    CHECK_FALSE(exact_solve(f).has_value());
}

TEST_CASE("exact count agrees with enumeration on random formulas") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 120; ++trial) {
        Formula f;
        f.num_vars = 1 + static_cast<int>(rng() % 10);
        int m = static_cast<int>(rng() % 10);
        for (int c = 0; c < m; ++c) {
            std::vector<Lit> lits;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < len; ++i)
                lits.push_back(Lit{static_cast<Var>(1 + rng() % f.num_vars), (rng() & 1) != 0});
            f.add_clause(lits);
        }
        CAPTURE(to_dimacs(f));
        REQUIRE(exact_count(f) == brute_count(f));
        CHECK(exact_satisfiable(f) == (brute_count(f) > 0));
        REQUIRE(exact_count(f, Semantics::OneInThree) ==
                brute_count(f, Semantics::OneInThree));
    }
}

TEST_CASE("exact solve yields a model when satisfiable") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        Formula f;
        f.num_vars = 2 + static_cast<int>(rng() % 8);
        int m = 1 + static_cast<int>(rng() % 8);
        for (int c = 0; c < m; ++c) {
            std::vector<Lit> lits;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < len; ++i)
                lits.push_back(Lit{static_cast<Var>(1 + rng() % f.num_vars), (rng() & 1) != 0});
            f.add_clause(lits);
        }
        auto model = exact_solve(f);
        if (model)
            CHECK(evaluate(f, *model));
        else
            CHECK(brute_count(f) == 0);
    }
}

TEST_CASE("exact count scales past the enumeration cap on forced chains") {
    // long chain of bi-implications: 2 models regardless of length
    Formula f;
    f.num_vars = 60;
    for (Var v = 1; v < 60; ++v) {
        f.add_clause({neg_lit(v), pos_lit(v + 1)});
        f.add_clause({pos_lit(v), neg_lit(v + 1)});
    }
    CHECK(exact_count(f) == 2);
}

TEST_CASE("assignment serialization") {
    Assignment a(3);
    a.set(2, true);
    std::ostringstream os;
    write_assignment(os, a, 3);
    CHECK(os.str() == "v -1 2 -3 0\n");
}
