#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "curvecount/hyperbolic.hpp"
#include "curvecount/intersections.hpp"
#include "curvecount/parallel.hpp"
#include "curvecount/words.hpp"

namespace curvecount {

inline constexpr double kLengthTolerance = 1e-9;

enum class CountMode { primitive, all_integral };

// Exact simple-multicurve count by slope: primitive mode counts coprime
// classes (p,q)/±1 plus the two axis classes with geodesic length <= L;
// all-integral mode weights each primitive class by the number of parallel
// multiples that still fit.  Enumeration descends the two Farey trees with
// the trace recursion tr(mediant') = tr * tr(neighbor) - tr(other), pruning
// on the monotonically growing traces.
inline std::int64_t simple_count(const PuncturedTorusStructure& X, double L, CountMode mode) {
    if (!(L > 0)) throw std::domain_error("simple_count needs L > 0");
    const double L_eff = L + kLengthTolerance;
    auto len = [](double tr) { return 2.0 * std::acosh(tr / 2.0); };
    auto weight = [&](double tr) -> std::int64_t {
        double l = len(tr);
        if (l > L_eff) return 0;
        if (mode == CountMode::primitive) return 1;
        return (std::int64_t)std::floor(L_eff / l);
    };

    std::int64_t total = 0;
    double x = X.trace_x(), y = X.trace_y(), z = X.trace_z();
    total += weight(x);  // slope (1,0)
    total += weight(y);  // slope (0,1)

    struct Node { double trA, trB, trM; };
    std::vector<Node> stack;
    stack.push_back({x, y, z});           // quadrant of positive slopes
    stack.push_back({y, x, x * y - z});   // quadrant of negative slopes
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        std::int64_t w = weight(n.trM);
        if (w == 0) continue;  // children are strictly longer
        total += w;
        stack.push_back({n.trA, n.trM, n.trA * n.trM - n.trB});
        stack.push_back({n.trM, n.trB, n.trM * n.trB - n.trA});
    }
    return total;
}

// Breadth-first closure of the mapping-class orbit of a seed class, keeping
// classes of length <= cutoff.  Deterministic: layers are expanded in sorted
// order.  Lengths are evaluated in parallel, merged by index.
struct OrbitSublevel {
    std::vector<std::pair<std::string, double>> classes;  // canonical word, length
    bool complete = true;       // false if stopped by the layer budget
    std::vector<std::string> frontier;  // words whose images were not expanded
    std::size_t layers = 0;
};

inline OrbitSublevel orbit_sublevel(const PuncturedTorusStructure& X, const CyclicWord& seed,
                                    double cutoff, int workers = 1,
                                    std::size_t max_layers = SIZE_MAX,
                                    const std::vector<std::string>* resume_frontier = nullptr,
                                    const std::vector<std::pair<std::string, double>>* resume_visited =
                                        nullptr) {
    static const std::vector<MappingClass> kMoves = [] {
        std::vector<MappingClass> ms;
        for (auto m : {"T", "t", "S", "I"}) ms.emplace_back(m);
        return ms;
    }();

    OrbitSublevel out;
    std::unordered_map<std::string, double> visited;
    std::vector<std::string> layer;

    if (resume_visited) {
        for (auto& [w, l] : *resume_visited) visited.emplace(w, l);
        out.classes = *resume_visited;
        layer = *resume_frontier;
    } else {
        double seed_len = X.length(seed);
        if (seed_len > cutoff + kLengthTolerance)
            throw std::domain_error("seed class is longer than the census cutoff");
        visited.emplace(seed.str(), seed_len);
        out.classes.push_back({seed.str(), seed_len});
        layer.push_back(seed.str());
    }

    while (!layer.empty()) {
        if (out.layers >= max_layers) {
            out.complete = false;
            out.frontier = layer;
            return out;
        }
        ++out.layers;
        // candidate images of this layer, deduplicated before length checks
        std::set<std::string> novel;
        for (const auto& w : layer) {
            for (const auto& mv : kMoves) {
                std::string img = CyclicWord::canonicalize(mv.apply_raw(w)).str();
                if (!visited.count(img)) novel.insert(img);
            }
        }
        std::vector<std::string> cand(novel.begin(), novel.end());
        std::vector<double> lens(cand.size());
        parallel_for(cand.size(), workers, [&](std::size_t i) {
            double t = std::abs(X.represent(cand[i]).trace());
            lens[i] = t > 2.0 ? 2.0 * std::acosh(t / 2.0) : 0.0;
        });
        std::vector<std::string> next;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (lens[i] <= 0) continue;  // peripheral images cannot occur for valid seeds
            if (lens[i] > cutoff + kLengthTolerance) continue;
            visited.emplace(cand[i], lens[i]);
            out.classes.push_back({cand[i], lens[i]});
            next.push_back(cand[i]);
        }
        layer = std::move(next);
    }
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

struct CensusConfig {
    CyclicWord seed = CyclicWord::canonicalize("ab");
    double L_max = 10;
    double slack = 1.3;
    double certify_step = 1.15;
    std::vector<double> checkpoints;  // increasing, <= L_max
    int workers = 1;
    int spot_check_interval = 50;   // geometric self-intersection audit stride
    double spot_check_length_cap = 20.0;  // audit only classes in the fast certified range

    // geometric default: L_max / 1.25^k down to the seed scale
    static std::vector<double> geometric_checkpoints(double L_max, double L_min, double ratio = 1.25) {
        std::vector<double> cps;
        for (double L = L_max; L >= L_min; L /= ratio) cps.push_back(L);
        std::sort(cps.begin(), cps.end());
        return cps;
    }
};

struct CheckpointRow {
    double L = 0;
    std::int64_t count = 0;
    double normalized = 0;  // count / L^2
    bool certified = false;
};

struct CensusResult {
    std::vector<CheckpointRow> rows;
    std::size_t classes_visited = 0;  // classes within the certification cutoff
    std::size_t seed_self_intersections = 0;
    double min_length = 0;
    double slack_used = 0;
    double certify_cutoff = 0;
    std::size_t spot_checked = 0;
    std::vector<double> sample_angles;  // exploratory crossing-angle statistics
};

// Counting function N(L) for the orbit of the seed: BFS to slack * L_max,
// recount with the slack increased by one certification step, and flag each
// checkpoint whose count is stable across the two cutoffs.
inline CensusResult type_census(const PuncturedTorusStructure& X, const CensusConfig& cfg) {
    if (!cfg.seed.primitive()) throw std::domain_error("census seed must be primitive");
    if (cfg.seed.peripheral()) throw std::domain_error("census seed must be non-peripheral");
    if (cfg.slack < 1.0 || cfg.certify_step <= 1.0)
        throw std::domain_error("census needs slack >= 1 and certify_step > 1");
    std::vector<double> cps = cfg.checkpoints;
    if (cps.empty()) throw std::domain_error("census needs checkpoints");
    for (double L : cps)
        if (L > cfg.L_max + kLengthTolerance)
            throw std::domain_error("checkpoints must not exceed L_max");

    auto base = orbit_sublevel(X, cfg.seed, cfg.slack * cfg.L_max, cfg.workers);
    auto wide = orbit_sublevel(X, cfg.seed, cfg.slack * cfg.certify_step * cfg.L_max, cfg.workers);

    auto count_at = [](const OrbitSublevel& s, double L) {
        std::int64_t n = 0;
        for (auto& [w, l] : s.classes)
            if (l <= L + kLengthTolerance) ++n;
        return n;
    };

    CensusResult res;
    res.slack_used = cfg.slack;
    res.certify_cutoff = cfg.slack * cfg.certify_step * cfg.L_max;
    res.classes_visited = wide.classes.size();
    res.min_length = wide.classes.empty() ? 0
                                          : std::min_element(wide.classes.begin(), wide.classes.end(),
                                                             [](auto& a, auto& b) {
                                                                 return a.second < b.second;
                                                             })->second;
    for (double L : cps) {
        CheckpointRow row;
        row.L = L;
        std::int64_t n_base = count_at(base, L);
        std::int64_t n_wide = count_at(wide, L);
        row.count = n_wide;
        row.normalized = double(n_wide) / (L * L);
        row.certified = (n_base == n_wide);
        res.rows.push_back(row);
    }

    // audit: geometric self-intersection constancy across the orbit, plus
    // exploratory angle statistics
    res.seed_self_intersections = self_crossings_axis(X, cfg.seed).size();
    if (cfg.spot_check_interval > 0) {
        std::vector<std::size_t> picks;
        for (std::size_t i = 0; i < wide.classes.size(); i += cfg.spot_check_interval)
            if (wide.classes[i].second <= cfg.spot_check_length_cap) picks.push_back(i);
        std::vector<std::vector<double>> angles(picks.size());
        std::vector<std::size_t> counts(picks.size());
        parallel_for(picks.size(), cfg.workers, [&](std::size_t k) {
            auto w = CyclicWord::canonicalize(wide.classes[picks[k]].first);
            auto cr = self_crossings_axis(X, w);
            counts[k] = cr.size();
            for (auto& c : cr) angles[k].push_back(c.angle);
        });
        for (std::size_t k = 0; k < picks.size(); ++k) {
            if (counts[k] != res.seed_self_intersections)
                throw std::runtime_error("orbit class failed the self-intersection audit: " +
                                         wide.classes[picks[k]].first);
            ++res.spot_checked;
            res.sample_angles.insert(res.sample_angles.end(), angles[k].begin(), angles[k].end());
        }
    }
    return res;
}

struct RatioRow {
    double L = 0;
    std::int64_t type_count_1 = 0, type_count_2 = 0;
    std::int64_t simple_count_1 = 0, simple_count_2 = 0;
    double type_ratio = 0, simple_ratio = 0, difference = 0;
    bool certified = false;
};

// Corollary-style ratio experiment: the type-count ratio between two
// structures against the simple-count ratio, per checkpoint.
inline std::vector<RatioRow> ratio_experiment(const PuncturedTorusStructure& X1,
                                              const PuncturedTorusStructure& X2,
                                              const CyclicWord& seed, const CensusConfig& proto) {
    CensusConfig cfg = proto;
    cfg.seed = seed;
    auto r1 = type_census(X1, cfg);
    auto r2 = type_census(X2, cfg);
    std::vector<RatioRow> rows;
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
        RatioRow row;
        row.L = cfg.checkpoints[i];
        row.type_count_1 = r1.rows[i].count;
        row.type_count_2 = r2.rows[i].count;
        row.simple_count_1 = simple_count(X1, row.L, CountMode::primitive);
        row.simple_count_2 = simple_count(X2, row.L, CountMode::primitive);
        row.certified = r1.rows[i].certified && r2.rows[i].certified;
        if (row.type_count_2 > 0) row.type_ratio = double(row.type_count_1) / row.type_count_2;
        if (row.simple_count_2 > 0)
            row.simple_ratio = double(row.simple_count_1) / row.simple_count_2;
        row.difference = std::abs(row.type_ratio - row.simple_ratio);
        rows.push_back(row);
    }
    return rows;
}

// A weighted multicurve: components with positive weights.
using WeightedMulticurve = std::vector<std::pair<CyclicWord, double>>;

// Filling test on the torus: the components must realize at least two
// distinct projective slopes in homology.
inline bool is_filling(const WeightedMulticurve& lambda) {
    std::set<std::pair<std::int64_t, std::int64_t>> slopes;
    for (auto& [w, wt] : lambda) {
        auto [p, q] = w.homology();
        if (p == 0 && q == 0) continue;
        std::int64_t g = std::gcd(std::abs(p), std::abs(q));
        std::int64_t sp = p / g, sq = q / g;
        if (sq < 0 || (sq == 0 && sp < 0)) { sp = -sp; sq = -sq; }
        slopes.insert({sp, sq});
    }
    return slopes.size() >= 2;
}

// Intersection pairing of the weighted multicurve with a class.
inline double intersection_pairing(const PuncturedTorusStructure& X,
                                   const WeightedMulticurve& lambda, const CyclicWord& w) {
    double total = 0;
    for (auto& [comp, weight] : lambda) {
        if (comp == w) continue;  // parallel copies are disjoint
        total += weight * double(pair_crossings_axis(X, comp, w).size());
    }
    return total;
}

struct IntersectionCensusResult {
    std::int64_t count = 0;
    bool certified = false;
    std::size_t classes_visited = 0;
};

// |{gamma in the orbit of seed : i(lambda, gamma) <= L}|, by the same BFS
// with the pairing as the pruning functional; the filling property makes the
// sub-level sets finite.  Certified by the slack-step protocol.
inline IntersectionCensusResult intersection_count(const PuncturedTorusStructure& X,
                                                   const WeightedMulticurve& lambda,
                                                   const CyclicWord& seed, double L,
                                                   double slack = 1.3, double certify_step = 1.15,
                                                   int workers = 1) {
    if (!is_filling(lambda))
        throw std::domain_error("pairing census needs a filling multicurve (two distinct slopes)");
    for (auto& [comp, weight] : lambda) {
        if (weight <= 0) throw std::domain_error("component weights must be positive");
        if (!comp.primitive() || comp.peripheral())
            throw std::domain_error("multicurve components must be primitive and non-peripheral");
    }
    if (!seed.primitive() || seed.peripheral())
        throw std::domain_error("census seed must be primitive and non-peripheral");

    static const std::vector<MappingClass> kMoves = [] {
        std::vector<MappingClass> ms;
        for (auto m : {"T", "t", "S", "I"}) ms.emplace_back(m);
        return ms;
    }();

    auto explore = [&](double cutoff) {
        std::unordered_map<std::string, double> visited;  // word -> pairing
        double seed_pairing = intersection_pairing(X, lambda, seed);
        if (seed_pairing > cutoff + kLengthTolerance)
            throw std::domain_error("seed pairing exceeds the census cutoff");
        visited.emplace(seed.str(), seed_pairing);
        std::vector<std::string> layer{seed.str()};
        while (!layer.empty()) {
            std::set<std::string> novel;
            for (const auto& w : layer)
                for (const auto& mv : kMoves) {
                    std::string img = CyclicWord::canonicalize(mv.apply_raw(w)).str();
                    if (!visited.count(img)) novel.insert(img);
                }
            std::vector<std::string> cand(novel.begin(), novel.end());
            std::vector<double> vals(cand.size());
            parallel_for(cand.size(), workers, [&](std::size_t i) {
                vals[i] = intersection_pairing(X, lambda, CyclicWord::canonicalize(cand[i]));
            });
            std::vector<std::string> next;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                if (vals[i] > cutoff + kLengthTolerance) continue;
                visited.emplace(cand[i], vals[i]);
                next.push_back(cand[i]);
            }
            layer = std::move(next);
        }
        return visited;
    };

    auto base = explore(slack * L);
    auto wide = explore(slack * certify_step * L);
    auto count_at = [&](const std::unordered_map<std::string, double>& m) {
        std::int64_t n = 0;
        for (auto& [w, v] : m)
            if (v <= L + kLengthTolerance) ++n;
        return n;
    };
    IntersectionCensusResult res;
    res.count = count_at(wide);
    res.certified = (count_at(base) == res.count);
    res.classes_visited = wide.size();
    return res;
}

}  // namespace curvecount
