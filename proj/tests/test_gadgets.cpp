#include <catch2/catch_amalgamated.hpp>

#include "plsat/count.hpp"
#include "plsat/formula.hpp"
#include "plsat/gadgets.hpp"

using namespace plsat;

namespace {

struct GadgetUnderTest {
    Formula f;
    GadgetInstantiation g;
};

GadgetUnderTest make(GadgetKind k, int param = 0) {
    GadgetUnderTest t;
    Var x = t.f.fresh_var();
    t.g = instantiate(k, t.f, x, 1, param);
    return t;
}

// counts satisfying assignments with the in port clamped to the given value
std::uint64_t count_with_port(const GadgetUnderTest& t, bool port_value, Semantics sem) {
    Formula f = t.f;
    f.add_clause({Lit{t.g.in_port, !port_value}});
    return brute_count(f, sem);
}

// exhaustive check that ports agree in every satisfying assignment
bool ports_always_equal(const GadgetUnderTest& t, Semantics sem) {
    const Formula& f = t.f;
    Assignment a(f.num_vars);
    for (std::uint64_t mask = 0; mask < (1ull << f.num_vars); ++mask) {
        for (Var v = 1; v <= f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
        if (evaluate(f, a, sem) && a[t.g.in_port] != a[t.g.out_port]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("basic connector semantics") {
    GadgetUnderTest t = make(GadgetKind::Basic);
    ForcedRelation fr = forced_relation(GadgetKind::Basic);
    CHECK(ports_always_equal(t, fr.semantics));
    CHECK(count_with_port(t, true, fr.semantics) == 1);
    CHECK(count_with_port(t, false, fr.semantics) == 1);

    // x=1, x'=0 falsifies (-x v x')
    Assignment a(t.f.num_vars);
    a.set(t.g.in_port, true);
    a.set(t.g.out_port, false);
    CHECK_FALSE(evaluate(t.f, a));
}

TEST_CASE("one-in-three connector semantics") {
    GadgetUnderTest t = make(GadgetKind::OneInThree);
    ForcedRelation fr = forced_relation(GadgetKind::OneInThree);
    REQUIRE(fr.semantics == Semantics::OneInThree);
    CHECK(ports_always_equal(t, fr.semantics));
    CHECK(count_with_port(t, true, fr.semantics) == fr.multiplier_port_true);    // 1
    CHECK(count_with_port(t, false, fr.semantics) == fr.multiplier_port_false);  // 2

    // x=1 forces a=0 and b=0
    const Formula& f = t.f;
    Var a_var = t.g.vars.at("a"), b_var = t.g.vars.at("b");
    Assignment a(f.num_vars);
    for (std::uint64_t mask = 0; mask < (1ull << f.num_vars); ++mask) {
        for (Var v = 1; v <= f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
        if (evaluate(f, a, Semantics::OneInThree) && a[t.g.in_port]) {
            CHECK_FALSE(a[a_var]);
            CHECK_FALSE(a[b_var]);
        }
    }
    // all positive, exactly three distinct variables per clause
    ClassFlags flags = classify(t.f);
    CHECK(flags.positive);
    CHECK(flags.exactly_three_distinct);
}

TEST_CASE("three-distinct connector semantics: sixteen assignments per port value") {
    GadgetUnderTest t = make(GadgetKind::ThreeDistinct);
    ForcedRelation fr = forced_relation(GadgetKind::ThreeDistinct);
    CHECK(ports_always_equal(t, fr.semantics));
    CHECK(count_with_port(t, true, fr.semantics) == 16);
    CHECK(count_with_port(t, false, fr.semantics) == 16);
    CHECK(classify(t.f).exactly_three_distinct);
}

TEST_CASE("monotone connector semantics") {
    GadgetUnderTest t = make(GadgetKind::Monotone);
    CHECK(ports_always_equal(t, Semantics::Cnf));
    CHECK(count_with_port(t, true, Semantics::Cnf) == 1);
    CHECK(count_with_port(t, false, Semantics::Cnf) == 1);
    CHECK(classify(t.f).monotone);

    // xbar is the negation of x in every satisfying assignment
    Var xbar = t.g.vars.at("xbar");
    Assignment a(t.f.num_vars);
    for (std::uint64_t mask = 0; mask < (1ull << t.f.num_vars); ++mask) {
        for (Var v = 1; v <= t.f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
        if (evaluate(t.f, a)) CHECK(a[xbar] == !a[t.g.in_port]);
    }
}

TEST_CASE("monotone deg-3 split gadget") {
    for (int len : {4, 6, 8}) {
        GadgetUnderTest t = make(GadgetKind::MonotoneDeg3, len);
        CHECK(ports_always_equal(t, Semantics::Cnf));
        CHECK(count_with_port(t, true, Semantics::Cnf) == 1);
        CHECK(count_with_port(t, false, Semantics::Cnf) == 1);
        ClassFlags flags = classify(t.f);
        CHECK(flags.monotone);
        CHECK(flags.max_occurrence <= 3);
        // every second variable equal: cycle vars alternate
        Assignment a(t.f.num_vars);
        for (std::uint64_t mask = 0; mask < (1ull << t.f.num_vars); ++mask) {
            for (Var v = 1; v <= t.f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
            if (evaluate(t.f, a))
                for (Var v = 1; v + 2 <= t.f.num_vars; v += 2) CHECK(a[v] == a[v + 2]);
        }
    }
    CHECK_THROWS_AS(make(GadgetKind::MonotoneDeg3, 3), std::invalid_argument);
    CHECK_THROWS_AS(make(GadgetKind::MonotoneDeg3, 2), std::invalid_argument);
}

TEST_CASE("side cycle gadget forces equal runs, k <= 4") {
    for (int k : {1, 2, 3, 4}) {
        GadgetUnderTest t = make(GadgetKind::SideCycle, k);
        CHECK(ports_always_equal(t, Semantics::Cnf));
        CHECK(count_with_port(t, true, Semantics::Cnf) == 1);
        CHECK(count_with_port(t, false, Semantics::Cnf) == 1);
        // x_i all equal, xbar_i all equal to the complement
        Var x1 = t.g.in_port;
        Assignment a(t.f.num_vars);
        for (std::uint64_t mask = 0; mask < (1ull << t.f.num_vars); ++mask) {
            for (Var v = 1; v <= t.f.num_vars; ++v) a.set(v, (mask >> (v - 1)) & 1);
            if (!evaluate(t.f, a)) continue;
            for (int i = 2; i <= k; ++i) CHECK(a[t.g.vars.at("x" + std::to_string(i))] == a[x1]);
            for (int i = 1; i <= k; ++i)
                CHECK(a[t.g.vars.at("xbar" + std::to_string(i))] == !a[x1]);
        }
    }
    // k=2 spot check from the spec: x_1 = x_2, xbar_1 = -x_1
    GadgetUnderTest t = make(GadgetKind::SideCycle, 2);
    CHECK(brute_count(t.f) == 2);
}

TEST_CASE("catalog dump lists all six variants") {
    std::string dump = gadget_catalog_dump();
    for (const char* name : {"basic", "one-in-three", "three-distinct", "monotone",
                             "monotone-deg3", "side-cycle"})
        CHECK(dump.find(std::string("gadget ") + name) != std::string::npos);
    CHECK(dump.find("multiplier 16/16") != std::string::npos);
    CHECK(dump.find("multiplier 1/2") != std::string::npos);
}

TEST_CASE("leftward instantiation mirrors column offsets") {
    Formula f;
    Var x = f.fresh_var();
    GadgetInstantiation g = instantiate(GadgetKind::Basic, f, x, -1);
    CHECK(g.column_of.at("x'") == -2);
    CHECK(g.column_of.at("c_x") == -1);
}
