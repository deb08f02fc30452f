#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "curvecount/hyperbolic.hpp"

using namespace curvecount;

TEST_CASE("modular structure from traces (3,3)") {
    auto X = PuncturedTorusStructure::from_traces(3, 3);
    CHECK(X.trace_z() == Catch::Approx(3.0).margin(1e-12));
    CHECK(std::abs(X.generator_a().trace() - 3.0) < 1e-12);
    CHECK(std::abs(X.generator_b().trace() - 3.0) < 1e-12);
    CHECK(std::abs((X.generator_a() * X.generator_b()).trace() - 3.0) < 1e-9);
    double comm = PuncturedTorusStructure::commutator_trace(X.generator_a(), X.generator_b());
    CHECK(std::abs(comm + 2.0) < 1e-9);
}

TEST_CASE("structure from traces (3,4)") {
    auto X = PuncturedTorusStructure::from_traces(3, 4);
    CHECK(X.trace_z() == Catch::Approx(6.0 - std::sqrt(11.0)).epsilon(1e-12));
    // Markov identity to 1e-12
    double x = 3, y = 4, z = X.trace_z();
    CHECK(std::abs(x * x + y * y + z * z - x * y * z) < 1e-9);
}

TEST_CASE("parabolic generator rejected") {
    CHECK_THROWS_AS(PuncturedTorusStructure::from_traces(2.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(PuncturedTorusStructure::from_traces(2.5, 2.5), std::domain_error);
}

TEST_CASE("lengths on the modular torus") {
    auto X = PuncturedTorusStructure::from_traces(3, 3);
    auto a = CyclicWord::canonicalize("a");
    CHECK(X.length(a) == Catch::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));
    // hexagonal symmetry: a, b, ab all the same length
    CHECK(X.length(CyclicWord::canonicalize("b")) == Catch::Approx(X.length(a)).epsilon(1e-12));
    CHECK(X.length(CyclicWord::canonicalize("ab")) == Catch::Approx(X.length(a)).epsilon(1e-9));
}

TEST_CASE("length is inversion and rotation invariant") {
    auto X = PuncturedTorusStructure::from_traces(3, 4);
    for (auto w : {"aab", "abb", "aabab", "aaBab"}) {
        auto c = CyclicWord::canonicalize(w);
        CHECK(X.length(c) == Catch::Approx(X.length(CyclicWord::canonicalize(invert_word(w))))
                                 .epsilon(1e-12));
    }
}

TEST_CASE("peripheral words have no length") {
    auto X = PuncturedTorusStructure::from_traces(3, 3);
    CHECK_THROWS_AS(X.length(CyclicWord::canonicalize("abAB")), std::domain_error);
    // homology-trivial peripheral power has |trace| = 2 under any structure
    auto Y = PuncturedTorusStructure::from_traces(4, 7);
    CHECK(std::abs(std::abs(Y.represent("abAB").trace()) - 2.0) < 1e-9);
}

TEST_CASE("axis endpoints are fixed points") {
    auto X = PuncturedTorusStructure::from_traces(3, 4);
    for (auto w : {"a", "b", "ab", "aab"}) {
        Mat2 m = X.represent(w);
        auto ends = axis_endpoints(m);
        for (auto e : {ends.repelling, ends.attracting}) {
            auto img = apply(m, e);
            double cross = e.u * img.v - e.v * img.u;
            REQUIRE(std::abs(cross) < 1e-9);
        }
    }
}
