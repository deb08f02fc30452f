#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "curvecount/intersections.hpp"

using namespace curvecount;

namespace {
const PuncturedTorusStructure& modular() {
    static auto X = PuncturedTorusStructure::from_traces(3, 3);
    return X;
}
const PuncturedTorusStructure& asymmetric() {
    static auto X = PuncturedTorusStructure::from_traces(3, 4);
    return X;
}
}  // namespace

TEST_CASE("self-intersection counts on the modular torus") {
    // slope classes are simple
    CHECK(self_crossings_axis(modular(), CyclicWord::canonicalize("ab")).empty());
    CHECK(self_crossings_axis(modular(), CyclicWord::canonicalize("a")).empty());
    CHECK(self_crossings_axis(modular(), CyclicWord::canonicalize("aab")).empty());
    // the staircase double and the figure eight each cross themselves once
    CHECK(self_crossings_axis(modular(), CyclicWord::canonicalize("aabb")).size() == 1);
    CHECK(self_crossings_domain(modular(), CyclicWord::canonicalize("aabb")).size() == 1);
    CHECK(self_crossings_axis(modular(), CyclicWord::canonicalize("abAb")).size() == 1);
    CHECK(self_crossings_domain(modular(), CyclicWord::canonicalize("abAb")).size() == 1);
}

TEST_CASE("axis and domain methods agree on small words") {
    for (auto w : {"aab", "aabb", "aaab", "aabab", "aaBab", "abAb", "aabAb", "aabbb", "aBaBB"}) {
        auto c = CyclicWord::canonicalize(w);
        if (!c.primitive() || c.peripheral()) continue;
        CAPTURE(w);
        auto ax = self_crossings_axis(modular(), c);
        auto dm = self_crossings_domain(modular(), c);
        REQUIRE(ax.size() == dm.size());
        for (size_t i = 0; i < ax.size(); ++i) {
            REQUIRE(ax[i].t1 == Catch::Approx(dm[i].t1).margin(1e-5));
            REQUIRE(ax[i].t2 == Catch::Approx(dm[i].t2).margin(1e-5));
            REQUIRE(ax[i].angle == Catch::Approx(dm[i].angle).margin(1e-5));
        }
    }
}

TEST_CASE("both methods agree on a second structure") {
    for (auto w : {"aabb", "abAb", "aabAb"}) {
        auto c = CyclicWord::canonicalize(w);
        CAPTURE(w);
        auto ax = self_crossings_axis(asymmetric(), c);
        auto dm = self_crossings_domain(asymmetric(), c);
        REQUIRE(ax.size() == dm.size());
    }
}

TEST_CASE("christoffel classes are simple") {
    for (std::int64_t p = 1; p <= 7; ++p)
        for (std::int64_t q = 1; p + q <= 8; ++q) {
            if (std::gcd(p, q) != 1) continue;
            CAPTURE(p, q);
            auto w = christoffel(p, q);
            CHECK(self_crossings_axis(asymmetric(), w).empty());
        }
}

TEST_CASE("generator curves intersect once") {
    auto a = CyclicWord::canonicalize("a");
    auto b = CyclicWord::canonicalize("b");
    CHECK(pair_crossings_axis(modular(), a, b).size() == 1);
    CHECK(pair_crossings_domain(modular(), a, b).size() == 1);
    CHECK_THROWS_AS(pair_crossings_axis(modular(), a, a), std::domain_error);
}

TEST_CASE("slope pairing equals the determinant") {
    auto a = christoffel(1, 0);
    for (std::int64_t p = 1; p <= 6; ++p)
        for (std::int64_t q = 1; p + q <= 7; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto w = christoffel(p, q);
            CAPTURE(p, q);
            CHECK(std::ssize(pair_crossings_axis(modular(), a, w)) == q);
        }
}

TEST_CASE("angles are in range") {
    auto c = CyclicWord::canonicalize("aabb");
    auto crossings = self_crossings_axis(modular(), c);
    for (auto& x : crossings) {
        CHECK(x.angle > 0);
        CHECK(x.angle <= M_PI / 2 + 1e-12);
    }
}

TEST_CASE("mapping classes preserve self-intersection counts") {
    auto c = CyclicWord::canonicalize("aabb");
    auto base = self_crossings_axis(modular(), c).size();
    REQUIRE(base == 1);
    for (auto moves : {"T", "t", "S", "TS", "tSI"}) {
        MappingClass phi{moves};
        auto img = phi.apply(c);
        CAPTURE(moves, img.str());
        CHECK(self_crossings_axis(modular(), img).size() == base);
    }
}

TEST_CASE("realization carries arcs and stabilization data") {
    auto r = realize(modular(), CyclicWord::canonicalize("aabb"));
    CHECK(r.length == Catch::Approx(modular().length(CyclicWord::canonicalize("aabb"))));
    CHECK(r.crossings.size() == 1);
    CHECK(r.stabilized_radius >= 2);
    CHECK(!r.period_arcs.empty());
    for (auto& [z0, z1] : r.period_arcs) {
        CHECK(z0.imag() > 0);
        CHECK(z1.imag() > 0);
    }
}

TEST_CASE("peripheral and imprimitive inputs are rejected") {
    CHECK_THROWS_AS(self_crossings_axis(modular(), CyclicWord::canonicalize("abAB")),
                    std::domain_error);
    CHECK_THROWS_AS(self_crossings_axis(modular(), CyclicWord::canonicalize("abab")),
                    std::domain_error);
}
