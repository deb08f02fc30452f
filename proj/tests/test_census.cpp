#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <set>

#include "curvecount/census.hpp"

using namespace curvecount;

namespace {
const PuncturedTorusStructure& modular() {
    static auto X = PuncturedTorusStructure::from_traces(3, 3);
    return X;
}
}  // namespace

TEST_CASE("simple_count near the systole") {
    double sys = 2.0 * std::acosh(1.5);
    CHECK(simple_count(modular(), sys * 0.99, CountMode::primitive) == 0);
    // slopes 0, 1, infinity all have the systole length on the modular torus
    CHECK(simple_count(modular(), sys * 1.01, CountMode::primitive) == 3);
    CHECK(simple_count(modular(), sys * 1.01, CountMode::all_integral) == 3);
}

TEST_CASE("simple_count matches a direct christoffel enumeration") {
    auto X = PuncturedTorusStructure::from_traces(3, 4);
    for (double L : {5.0, 9.0, 13.0}) {
        std::int64_t direct = 0;
        for (std::int64_t p = -60; p <= 60; ++p)
            for (std::int64_t q = 0; q <= 60; ++q) {
                if (q == 0 && p <= 0) continue;  // classes mod +-1
                if (std::gcd(std::abs(p), q) != 1) continue;
                if (X.length(christoffel(p, q)) <= L + kLengthTolerance) ++direct;
            }
        CAPTURE(L);
        CHECK(simple_count(X, L, CountMode::primitive) == direct);
    }
}

TEST_CASE("all-integral equals the sum of primitive counts at L/k") {
    auto X = PuncturedTorusStructure::from_traces(3, 4);
    for (double L : {8.0, 12.0}) {
        std::int64_t expect = 0;
        for (int k = 1; k * X.systole_hint() <= L + 1; ++k)
            expect += simple_count(X, L / k, CountMode::primitive);
        CHECK(simple_count(X, L, CountMode::all_integral) == expect);
    }
}

TEST_CASE("type census of a simple seed equals the lattice count") {
    CensusConfig cfg;
    cfg.seed = CyclicWord::canonicalize("ab");
    cfg.L_max = 16;
    cfg.slack = 1.6;  // the move graph needs headroom to connect the sub-level set
    cfg.checkpoints = {4, 8, 12, 16};
    cfg.spot_check_interval = 40;
    auto res = type_census(modular(), cfg);
    REQUIRE(res.rows.size() == 4);
    CHECK(res.seed_self_intersections == 0);
    for (auto& row : res.rows) {
        CAPTURE(row.L);
        REQUIRE(row.certified);
        CHECK(row.count == simple_count(modular(), row.L, CountMode::primitive));
    }
    CHECK(res.min_length == Catch::Approx(2.0 * std::acosh(1.5)).epsilon(1e-9));
}

TEST_CASE("insufficient slack is reported as uncertified, never wrong-certified") {
    CensusConfig cfg;
    cfg.seed = CyclicWord::canonicalize("ab");
    cfg.L_max = 16;
    cfg.slack = 1.0;
    cfg.checkpoints = {16};
    cfg.spot_check_interval = 0;
    auto res = type_census(modular(), cfg);
    // at slack 1 the sub-level set is not move-connected; the protocol must
    // flag that rather than certify a short count
    std::int64_t truth = simple_count(modular(), 16, CountMode::primitive);
    if (res.rows[0].count != truth) CHECK_FALSE(res.rows[0].certified);
}

TEST_CASE("census counts are monotone and start at zero") {
    CensusConfig cfg;
    cfg.seed = CyclicWord::canonicalize("aabb");
    cfg.L_max = 12;
    cfg.checkpoints = {1.0, 6, 9, 12};
    cfg.spot_check_interval = 25;
    auto res = type_census(modular(), cfg);
    CHECK(res.rows.front().count == 0);  // below the shortest class of the type
    for (size_t i = 1; i < res.rows.size(); ++i)
        CHECK(res.rows[i].count >= res.rows[i - 1].count);
    CHECK(res.seed_self_intersections == 1);
    for (double a : res.sample_angles) {
        CHECK(a > 0);
        CHECK(a <= M_PI / 2 + 1e-12);
    }
}

TEST_CASE("census rejects bad seeds") {
    CensusConfig cfg;
    cfg.L_max = 8;
    cfg.checkpoints = {8};
    cfg.seed = CyclicWord::canonicalize("abAB");
    CHECK_THROWS_AS(type_census(modular(), cfg), std::domain_error);
    cfg.seed = CyclicWord::canonicalize("abab");
    CHECK_THROWS_AS(type_census(modular(), cfg), std::domain_error);
}

TEST_CASE("identical structures give ratio one") {
    CensusConfig proto;
    proto.L_max = 10;
    proto.checkpoints = {6, 10};
    proto.spot_check_interval = 0;
    auto rows = ratio_experiment(modular(), modular(), CyclicWord::canonicalize("ab"), proto);
    for (auto& r : rows) {
        CHECK(r.type_ratio == 1.0);
        CHECK(r.simple_ratio == 1.0);
        CHECK(r.difference == 0.0);
    }
}

TEST_CASE("intersection census against the lattice oracle") {
    WeightedMulticurve lambda{{CyclicWord::canonicalize("a"), 1.0},
                              {CyclicWord::canonicalize("b"), 1.0}};
    auto seed = CyclicWord::canonicalize("ab");
    for (double L : {3.0, 4.0}) {
        std::int64_t lattice = 0;
        for (std::int64_t p = -10; p <= 10; ++p)
            for (std::int64_t q = 0; q <= 10; ++q) {
                if (q == 0 && p <= 0) continue;
                if (std::gcd(std::abs(p), q) != 1) continue;
                if (std::abs(p) + std::abs(q) <= L + kLengthTolerance) ++lattice;
            }
        auto res = intersection_count(modular(), lambda, seed, L);
        CAPTURE(L);
        CHECK(res.certified);
        CHECK(res.count == lattice);
    }
}

TEST_CASE("intersection census rejects non-filling data") {
    WeightedMulticurve single{{CyclicWord::canonicalize("a"), 1.0}};
    CHECK_THROWS_AS(intersection_count(modular(), single, CyclicWord::canonicalize("ab"), 4),
                    std::domain_error);
    WeightedMulticurve parallel{{CyclicWord::canonicalize("a"), 1.0},
                                {CyclicWord::canonicalize("a"), 2.0}};
    CHECK_THROWS_AS(intersection_count(modular(), parallel, CyclicWord::canonicalize("ab"), 4),
                    std::domain_error);
}

TEST_CASE("pairing scales like the weights") {
    WeightedMulticurve lambda{{CyclicWord::canonicalize("a"), 1.0},
                              {CyclicWord::canonicalize("b"), 1.0}};
    WeightedMulticurve doubled{{CyclicWord::canonicalize("a"), 2.0},
                               {CyclicWord::canonicalize("b"), 2.0}};
    auto seed = CyclicWord::canonicalize("ab");
    auto a = intersection_count(modular(), doubled, seed, 8.0);
    auto b = intersection_count(modular(), lambda, seed, 4.0);
    CHECK(a.count == b.count);
}

TEST_CASE("orbit sublevel resume matches a straight run") {
    auto full = orbit_sublevel(modular(), CyclicWord::canonicalize("ab"), 10.0, 1);
    auto part = orbit_sublevel(modular(), CyclicWord::canonicalize("ab"), 10.0, 1, 2);
    REQUIRE_FALSE(part.complete);
    auto resumed = orbit_sublevel(modular(), CyclicWord::canonicalize("ab"), 10.0, 1, SIZE_MAX,
                                  &part.frontier, &part.classes);
    auto key = [](OrbitSublevel& s) {
        std::set<std::string> words;
        for (auto& [w, l] : s.classes) words.insert(w);
        return words;
    };
    CHECK(key(full) == key(resumed));
}

TEST_CASE("worker count does not change the census") {
    CensusConfig cfg;
    cfg.seed = CyclicWord::canonicalize("ab");
    cfg.L_max = 12;
    cfg.checkpoints = {6, 12};
    cfg.spot_check_interval = 0;
    cfg.workers = 1;
    auto r1 = type_census(modular(), cfg);
    cfg.workers = 4;
    auto r4 = type_census(modular(), cfg);
    REQUIRE(r1.rows.size() == r4.rows.size());
    for (size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].count == r4.rows[i].count);
        CHECK(r1.rows[i].certified == r4.rows[i].certified);
    }
}
