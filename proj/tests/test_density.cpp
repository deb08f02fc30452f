#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "curvecount/density.hpp"

using namespace curvecount;

TEST_CASE("orbit density coefficients") {
    CHECK(orbit_density_over_pi2({1, 1}) == Rational(6));
    CHECK(orbit_density_over_pi2({1, 2}) == Rational(3));
    CHECK(orbit_density_over_pi2({2, 2}) == Rational(3, 2));
}

TEST_CASE("diagonal density sum approaches 1") {
    // sum over d of 6/(pi^2 d^2) = 1; partial sums + integral tail bound
    double partial = 0;
    const int D = 2000;
    for (int d = 1; d <= D; ++d) partial += 6.0 / (M_PI * M_PI * d * d);
    double tail_hi = 6.0 / (M_PI * M_PI * D);
    CHECK(partial < 1.0);
    CHECK(partial + tail_hi > 1.0);
    CHECK(1.0 - partial < 1e-3 + 1e-12);
}

TEST_CASE("count_in_region hand examples") {
    auto tri = Region::triangle(Rational(1), Rational(1));
    auto s11 = InvariantSet::from_roots({{1, 1}});
    CHECK(count_in_region(s11, tri, 4) == 5);  // (1,1),(1,2),(2,1),(1,3),(3,1)
    auto s22 = InvariantSet::from_roots({{2, 2}});
    CHECK(count_in_region(s22, tri, 4) == 1);
    CHECK(count_in_region(s11, tri, 1) == 0);  // x+y <= 1 has no interior lattice points
}

TEST_CASE("density_estimate on the unit square matches 6/pi^2") {
    auto sq = Region::unit_square();
    auto s11 = InvariantSet::from_roots({{1, 1}});
    auto rep = density_estimate(s11, sq, {500, 2000});
    REQUIRE(rep.exact_coeff_over_pi2.has_value());
    CHECK(*rep.exact_coeff_over_pi2 == Rational(6));
    double density = 6.0 / (M_PI * M_PI);
    CHECK(std::abs(rep.empirical.back().normalized - density) < 0.002);
}

TEST_CASE("full lattice density is exactly 1") {
    auto sq = Region::unit_square();
    auto all = InvariantSet::full_lattice();
    auto rep = density_estimate(all, sq, {100});
    REQUIRE(rep.exact_value.has_value());
    CHECK(*rep.exact_value == Rational(1));
    CHECK(rep.empirical[0].count == 100 * 100);
}

TEST_CASE("Calkin-Wilf splitting of (1,1)") {
    // S_(1,2) u S_(2,1) u {(1,1)} equals S_(1,1), exhaustively up to 500
    const std::int64_t L = 500;
    std::set<std::pair<std::int64_t, std::int64_t>> split;
    split.insert({1, 1});
    visit_orbit({1, 2}, L, Norm::max, [&](const LatticePoint& p) { split.insert({p.x, p.y}); });
    visit_orbit({2, 1}, L, Norm::max, [&](const LatticePoint& p) { split.insert({p.x, p.y}); });
    std::size_t count11 = 0;
    bool all_match = true;
    visit_orbit({1, 1}, L, Norm::max, [&](const LatticePoint& p) {
        ++count11;
        if (!split.count({p.x, p.y})) all_match = false;
    });
    CHECK(all_match);
    CHECK(split.size() == count11);
    // density splitting: 6 = 3 + 3 over pi^2
    CHECK(orbit_density_over_pi2({1, 1}) ==
          orbit_density_over_pi2({1, 2}) + orbit_density_over_pi2({2, 1}));
}

TEST_CASE("exact splitting identity for random roots") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<std::int64_t> dist(1, 100000);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t p = dist(rng), q = dist(rng);
        Rational parent = orbit_density_over_pi2({p, q});
        Rational left = orbit_density_over_pi2({p, p + q});
        Rational right = orbit_density_over_pi2({p + q, q});
        REQUIRE(parent == left + right);
    }
}

TEST_CASE("set-level splitting inside the 100-box") {
    const std::int64_t L = 100;
    for (auto root : {LatticePoint{1, 1}, LatticePoint{2, 3}, LatticePoint{4, 2}}) {
        std::set<std::pair<std::int64_t, std::int64_t>> whole, parts;
        visit_orbit(root, L, Norm::max, [&](const LatticePoint& p) { whole.insert({p.x, p.y}); });
        parts.insert({root.x, root.y});
        auto [c1, c2] = children(root);
        visit_orbit(c1, L, Norm::max, [&](const LatticePoint& p) { parts.insert({p.x, p.y}); });
        visit_orbit(c2, L, Norm::max, [&](const LatticePoint& p) { parts.insert({p.x, p.y}); });
        REQUIRE(whole == parts);
    }
}

TEST_CASE("tail bound holds exactly") {
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 3}, {3, 5}}) {
        auto tri = Region::triangle(Rational(1), Rational(1));
        auto set = InvariantSet::from_roots({{p, q}});
        for (std::int64_t L : {50, 200, 500}) {
            auto count = count_in_region(set, tri, L);
            CHECK(count <= L * L / (2 * p * q));
        }
    }
}

TEST_CASE("transpose trick") {
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
        auto spq = InvariantSet::from_roots({{p, q}});
        auto s11 = InvariantSet::from_roots({{1, 1}});
        auto d11 = Region::triangle(Rational(1), Rational(1));
        auto dpq = Region::triangle(Rational(p), Rational(q));
        for (std::int64_t L : {100, 500}) {
            REQUIRE(count_in_region(spq, d11, L) == count_in_region(s11, dpq, L));
        }
    }
}

TEST_CASE("scaling consistency") {
    auto s11 = InvariantSet::from_roots({{1, 1}});
    auto half_square = Region::rectangle(Rational(0), Rational(1, 2), Rational(0), Rational(1, 2));
    auto square = Region::unit_square();
    // count in (2L) * (square/2) == count in L * square
    for (std::int64_t L : {37, 250}) {
        CHECK(count_in_region(s11, half_square, 2 * L) == count_in_region(s11, square, L));
    }
}

TEST_CASE("worker count does not change counts") {
    auto s11 = InvariantSet::from_roots({{1, 2}, {2, 1}});
    auto tri = Region::triangle(Rational(1), Rational(1));
    auto c1 = count_in_region(s11, tri, 777, 1);
    auto c4 = count_in_region(s11, tri, 777, 4);
    CHECK(c1 == c4);
}

TEST_CASE("polygon region agrees with the triangle it encodes") {
    auto tri = Region::triangle(Rational(1), Rational(1));
    auto poly = Region::polygon({{Rational(0), Rational(0)},
                                 {Rational(1), Rational(0)},
                                 {Rational(0), Rational(1)}});
    auto s11 = InvariantSet::from_roots({{1, 1}});
    for (std::int64_t L : {10, 123}) {
        CHECK(count_in_region(s11, tri, L) == count_in_region(s11, poly, L));
    }
    CHECK(tri.area() == poly.area());
}

TEST_CASE("empty schedule and non-increasing schedules are rejected") {
    auto s11 = InvariantSet::from_roots({{1, 1}});
    auto sq = Region::unit_square();
    CHECK_THROWS_AS(density_estimate(s11, sq, {}), std::domain_error);
    CHECK_THROWS_AS(density_estimate(s11, sq, {10, 10}), std::domain_error);
}
