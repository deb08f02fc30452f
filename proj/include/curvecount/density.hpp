#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvecount/lattice.hpp"
#include "curvecount/parallel.hpp"
#include "curvecount/region.hpp"

namespace curvecount {

// Density of a single orbit per unit area, as the exact rational 6/(p*q);
// the actual density is this value divided by pi^2.  Valid for any base
// point, not only roots.
inline Rational orbit_density_over_pi2(const LatticePoint& base) {
    return Rational(6) / Rational(checked_mul(base.x, base.y));
}

// Exact number of points of the orbit of `root` inside L * region.
inline std::int64_t count_orbit_in_region(const LatticePoint& root, const Region& region,
                                          std::int64_t L) {
    std::int64_t bound_sum = region.sum_bound(L);
    std::int64_t bound_x = region.x_bound(L);
    std::int64_t bound_y = region.y_bound(L);
    if (root.sum() > bound_sum) return 0;
    std::int64_t count = 0;
    // tree walk with per-coordinate pruning: descendants only grow coordinatewise
    std::vector<LatticePoint> stack{root};
    if (root.x > bound_x || root.y > bound_y) return 0;
    while (!stack.empty()) {
        LatticePoint p = stack.back();
        stack.pop_back();
        if (region.contains_scaled(p, L)) ++count;
        auto [c1, c2] = children(p);
        if (c1.sum() <= bound_sum && c1.x <= bound_x && c1.y <= bound_y) stack.push_back(c1);
        if (c2.sum() <= bound_sum && c2.x <= bound_x && c2.y <= bound_y) stack.push_back(c2);
    }
    return count;
}

// Exact cardinality of the invariant set inside L * region, summed over
// roots; per-root counting is independent, so it parallelizes freely and is
// merged in root order.
inline std::int64_t count_in_region(const InvariantSet& set, const Region& region, std::int64_t L,
                                    int workers = 1) {
    auto roots = set.roots_up_to(region.sum_bound(L));
    std::vector<std::int64_t> partial(roots.size(), 0);
    parallel_for(roots.size(), workers, [&](size_t i) {
        partial[i] = count_orbit_in_region(roots[i], region, L);
    });
    std::int64_t total = 0;
    for (auto c : partial) total = checked_add(total, c);
    return total;
}

struct DensityReport {
    struct Row {
        std::int64_t L;
        std::int64_t count;
        double normalized;  // count / L^2
        double abs_error;   // |normalized - exact density * area|, NaN if no exact value
    };
    std::vector<Row> empirical;

    // Exact density coefficient c with density = c / pi^2 (finite root sets,
    // or a truncated family with certified remainder).
    std::optional<Rational> exact_coeff_over_pi2;
    // Exact density value when it is itself a rational (the diagonal family sums to 1).
    std::optional<Rational> exact_value;
    double truncation_epsilon = 0.0;   // certified bound on the omitted tail of the coefficient sum
    double tail_bound_used = 0.0;      // the per-root tail bound sum actually accumulated
    std::string region_description;
    Rational region_area{0};

    // Best available float rendering of the exact density (per unit area).
    std::optional<double> exact_density() const {
        if (exact_value) return exact_value->to_double();
        if (exact_coeff_over_pi2)
            return exact_coeff_over_pi2->to_double() / (M_PI * M_PI);
        return std::nullopt;
    }
};

// Count at every L in the schedule and attach the exact density when the
// root structure allows it.  For the diagonal family the coefficient sum
// telescopes to exactly 1; finite root sets sum 6/(pq) exactly.
inline DensityReport density_estimate(const InvariantSet& set, const Region& region,
                                      const std::vector<std::int64_t>& L_schedule,
                                      double truncation_epsilon = 1e-3, int workers = 1) {
    if (L_schedule.empty()) throw std::domain_error("empty L schedule");
    for (size_t i = 1; i < L_schedule.size(); ++i)
        if (L_schedule[i] <= L_schedule[i - 1])
            throw std::domain_error("L schedule must be increasing");

    DensityReport report;
    report.region_description = region.describe();
    report.region_area = region.area();
    report.truncation_epsilon = truncation_epsilon;

    if (set.is_diagonal_family()) {
        report.exact_value = Rational(1);
    } else {
        Rational coeff(0);
        bool exact_ok = true;
        for (const auto& r : set.roots()) {
            try {
                coeff = coeff + orbit_density_over_pi2(r);
            } catch (const overflow_error&) {
                exact_ok = false;
                break;
            }
        }
        if (exact_ok) report.exact_coeff_over_pi2 = coeff;
    }

    double density = report.exact_density().value_or(std::nan(""));
    double area = report.region_area.to_double();
    for (auto L : L_schedule) {
        std::int64_t c = count_in_region(set, region, L, workers);
        double normalized = double(c) / (double(L) * double(L));
        double err = std::isnan(density) ? std::nan("") : std::abs(normalized - density * area);
        report.empirical.push_back({L, c, normalized, err});
    }
    return report;
}

}  // namespace curvecount
