#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <quadmath.h>

#include "curvecount/hyperbolic.hpp"
#include "curvecount/words.hpp"

namespace curvecount {

struct realize_error : std::runtime_error {
    explicit realize_error(const std::string& what) : std::runtime_error(what) {}
};

// One transverse crossing, by arc-length positions along the curve(s), with
// the crossing angle folded into (0, pi/2].
struct Crossing {
    double t1 = 0;  // position along the base curve, in [0, len1)
    double t2 = 0;  // position along the other strand / other curve
    double angle = 0;

    bool operator<(const Crossing& o) const {
        if (t1 != o.t1) return t1 < o.t1;
        return t2 < o.t2;
    }
};

struct GeodesicRealization {
    CyclicWord word;
    double length = 0;
    std::vector<std::pair<std::complex<double>, std::complex<double>>> period_arcs;
    std::vector<Crossing> crossings;
    int stabilized_radius = 0;  // candidate-ball radius at which the count stabilized
};

struct AxisMethodOptions {
    std::vector<int> radius_schedule{3, 5, 7};
    double dedupe_tol = 1e-6;
};

namespace detail {

// Resolving crossings of a closed geodesic of length L asks for roughly
// e^{1.5 L} of dynamic range (nearly parallel strands are e^{-L/2} apart
// while deck products grow like e^L).  Extended 80-bit precision is certified
// to ~22; quad precision to ~48.  Beyond that the enumeration refuses rather
// than undercount.
inline constexpr double kLongDoubleLengthCap = 22.0;
inline constexpr double kQuadLengthCap = 48.0;

inline long double ext_sqrt(long double x) { return sqrtl(x); }
inline long double ext_log(long double x) { return logl(x); }
inline long double ext_acos(long double x) { return acosl(x); }
inline long double ext_abs(long double x) { return fabsl(x); }
inline __float128 ext_sqrt(__float128 x) { return sqrtq(x); }
inline __float128 ext_log(__float128 x) { return logq(x); }
inline __float128 ext_acos(__float128 x) { return acosq(x); }
inline __float128 ext_abs(__float128 x) { return fabsq(x); }

// Extended-precision 2x2 for long group-element products, where plain double
// accumulates enough cancellation to corrupt deck-equivalent crossing data.
template <typename F>
struct TMat2 {
    F a = 1, b = 0, c = 0, d = 1;
    TMat2() = default;
    explicit TMat2(const Mat2& m) : a(m.a), b(m.b), c(m.c), d(m.d) {}
    TMat2(F a_, F b_, F c_, F d_) : a(a_), b(b_), c(c_), d(d_) {}
    TMat2 operator*(const TMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    TMat2 inverse() const { return {d, -b, -c, a}; }
    Mat2 to_mat2() const { return {double(a), double(b), double(c), double(d)}; }
};

// Frame sending the axis of g to the imaginary axis, repelling end to 0,
// attracting end to infinity; the deck then acts by z -> e^len * z.
struct AxisFrame {
    Mat2 fwd, inv;
    double len = 0;

    static AxisFrame build(const Mat2& g) {
        double tr = std::abs(g.trace());
        if (tr <= 2.0 + 1e-12) throw realize_error("axis frame of non-hyperbolic element");
        AxisFrame f;
        f.len = 2.0 * std::acosh(tr / 2.0);
        auto ends = axis_endpoints(g);
        const auto& r = ends.repelling;
        const auto& a = ends.attracting;
        Mat2 m{r.v, -r.u, a.v, -a.u};
        if (m.det() < 0) { m.c = -m.c; m.d = -m.d; }
        f.fwd = m.normalized();
        f.inv = f.fwd.inverse();
        // sanity: conjugated deck must be diagonal
        Mat2 gt = f.fwd * g * f.inv;
        double scale = std::max(std::abs(gt.a), std::abs(gt.d));
        if (std::abs(gt.b) > 1e-6 * scale || std::abs(gt.c) > 1e-6 * scale)
            throw realize_error("axis frame failed to diagonalize deck");
        return f;
    }

    std::complex<double> from_frame(double t) const {
        return inv.mobius(std::complex<double>(0.0, std::exp(t)));
    }
};

inline double wrap_param(double t, double len) {
    t = std::fmod(t, len);
    if (t < 0) t += len;
    if (t > len - 1e-9) t -= len;  // snap the upper window edge to 0
    if (std::abs(t) < 1e-12) t = 0;
    return t;
}

// Crossing of (base axis of frame f1, conjugator h12 applied to the axis of
// g2 with frame f2).  Candidates whose raw parameters land outside the
// period windows are rejected: they are deck translates of nearer
// representatives, and their conditioning degrades exponentially with the
// translation distance.
template <typename F>
std::optional<Crossing> crossing_of(const AxisFrame& f1, const AxisFrame& f2,
                                    const TMat2<F>& h12) {
    auto fmax = [](F x, F y) { return x > y ? x : y; };
    auto fmin = [](F x, F y) { return x < y ? x : y; };

    // endpoints of h12 * axis2 in frame 1: columns of f1 * h12 * f2.inv
    TMat2<F> m = TMat2<F>(f1.fwd) * h12 * TMat2<F>(f2.inv);
    F scale = fmax(fmax(ext_abs(m.a), ext_abs(m.b)), fmax(ext_abs(m.c), ext_abs(m.d)));
    // endpoint at 0 or infinity would mean a shared axis end; reject as noise
    if (ext_abs(m.d) < F(1e-12) * scale || ext_abs(m.c) < F(1e-12) * scale) return std::nullopt;
    F p = m.b / m.d, q = m.a / m.c;
    if (!(p * q < 0)) return std::nullopt;
    // noise floor: genuine transverse crossings near the period window keep
    // both endpoints away from the axis ends; rounding flips between nearly
    // parallel strands do not
    if (fmin(ext_abs(p), ext_abs(q)) < F(1e-12)) return std::nullopt;
    // |p/q| = tan^2(angle/2); a vanishing ratio is the rounding phantom of a
    // shared endpoint, not a resolvable crossing
    F ratio = fmin(ext_abs(p), ext_abs(q)) / fmax(ext_abs(p), ext_abs(q));
    if (ratio < F(1e-13)) return std::nullopt;

    F y = ext_sqrt(-p * q);
    F t1_raw = ext_log(y);
    if (double(t1_raw) < -0.25 * f1.len - 2.0 || double(t1_raw) > 1.25 * f1.len + 2.0)
        return std::nullopt;

    // same point along the partner strand: image height of iY under
    // w = f2 h12^-1 f1^-1, by the explicit Moebius formulas (the naive
    // complex evaluation cancels catastrophically for large Y)
    TMat2<F> w = TMat2<F>(f2.fwd) * h12.inverse() * TMat2<F>(f1.inv);
    F det = w.a * w.d - w.b * w.c;
    if (det <= 0) throw realize_error("orientation-reversing conjugator");
    F den = w.c * w.c * y * y + w.d * w.d;
    F real_part = w.b * w.d + w.a * w.c * y * y;
    F real_scale = ext_abs(w.b * w.d) + ext_abs(w.a * w.c) * y * y;
    if (ext_abs(real_part) > F(1e-6) * (real_scale + F(1e-300)) && real_scale > F(1e-280))
        throw realize_error("crossing point missed the partner axis");
    F t2_raw = ext_log(det * y / den);
    if (double(t2_raw) < -0.25 * f2.len - 2.0 || double(t2_raw) > 1.25 * f2.len + 2.0)
        return std::nullopt;

    Crossing c;
    c.t1 = wrap_param(double(t1_raw), f1.len);
    c.t2 = wrap_param(double(t2_raw), f2.len);
    F center = F(0.5) * (p + q);
    F hyp = ext_sqrt(center * center + y * y);
    c.angle = double(ext_acos(fmin(F(1), ext_abs(center) / hyp)));
    if (c.angle < 1e-7) return std::nullopt;  // tangent-degenerate
    return c;
}

inline void dedupe_crossings(std::vector<Crossing>& cs, double tol = 1e-6) {
    std::sort(cs.begin(), cs.end());
    std::vector<Crossing> out;
    for (const auto& c : cs) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (c.t1 - it->t1 > tol) break;
            if (std::abs(c.t1 - it->t1) <= tol && std::abs(c.t2 - it->t2) <= tol) { dup = true; break; }
        }
        if (!dup) out.push_back(c);
    }
    cs = std::move(out);
}

// Reduced words of length <= radius in the free group, as matrices.
template <typename F>
void ball_matrices(const PuncturedTorusStructure& X, int radius, std::vector<TMat2<F>>& out) {
    out.clear();
    out.push_back(TMat2<F>{});
    struct Node { TMat2<F> m; char last; int depth; };
    std::vector<Node> stack{{TMat2<F>{}, 0, 0}};
    const char letters[4] = {'a', 'A', 'b', 'B'};
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        if (n.depth == radius) continue;
        for (char c : letters) {
            if (n.last != 0 && c == inverse_letter(n.last)) continue;
            TMat2<F> m = n.m * TMat2<F>(X.represent(std::string(1, c)));
            out.push_back(m);
            stack.push_back({m, c, n.depth + 1});
        }
    }
}

template <typename F>
std::vector<TMat2<F>> prefix_matrices(const PuncturedTorusStructure& X, const std::string& w) {
    std::vector<TMat2<F>> pref;
    pref.reserve(w.size());
    TMat2<F> m;
    pref.push_back(m);
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        m = m * TMat2<F>(X.represent(std::string(1, w[i])));
        pref.push_back(m);
    }
    return pref;
}

template <typename F>
std::vector<Crossing> axis_crossings_at_radius(const PuncturedTorusStructure& X,
                                               const AxisFrame& f1, const AxisFrame& f2,
                                               const std::vector<TMat2<F>>& pref1,
                                               const std::vector<TMat2<F>>& pref2, bool self_mode,
                                               int radius, double tol) {
    std::vector<TMat2<F>> ball;
    ball_matrices(X, radius, ball);
    std::vector<Crossing> found;
    for (const auto& pm : pref1) {
        for (const auto& u : ball) {
            TMat2<F> left = pm * u;
            for (const auto& pq : pref2) {
                TMat2<F> h = left * pq.inverse();
                if (self_mode) {
                    // skip lifts equal to the base axis
                    Mat2 ht = f1.fwd * h.to_mat2() * f1.inv;
                    double s = std::max(std::abs(ht.a), std::abs(ht.d));
                    if (std::abs(ht.b) < 1e-9 * s && std::abs(ht.c) < 1e-9 * s) continue;
                }
                auto c = crossing_of<F>(f1, f2, h);
                if (c) found.push_back(*c);
            }
        }
    }
    if (self_mode) {
        // each unordered crossing appears from both strand sides; fold
        for (auto& c : found)
            if (c.t2 < c.t1) std::swap(c.t1, c.t2);
    }
    dedupe_crossings(found, tol);
    return found;
}

template <typename F>
std::vector<Crossing> axis_crossings_stabilized(const PuncturedTorusStructure& X,
                                                const AxisFrame& f1, const AxisFrame& f2,
                                                const std::string& w1, const std::string& w2,
                                                bool self_mode, const AxisMethodOptions& opt,
                                                int* stabilized_radius) {
    auto pref1 = prefix_matrices<F>(X, w1);
    auto pref2 = self_mode ? pref1 : prefix_matrices<F>(X, w2);
    std::vector<Crossing> prev, cur;
    bool stable = false;
    int used_radius = 0;
    for (size_t i = 0; i < opt.radius_schedule.size(); ++i) {
        cur = axis_crossings_at_radius<F>(X, f1, f2, pref1, self_mode ? pref1 : pref2, self_mode,
                                          opt.radius_schedule[i], opt.dedupe_tol);
        used_radius = opt.radius_schedule[i];
        if (i > 0 && cur.size() == prev.size()) { stable = true; break; }
        prev = cur;
    }
    if (!stable)
        throw realize_error("axis-linking enumeration did not stabilize for '" + w1 +
                            (self_mode ? std::string() : "','" + w2) + "' (last radius " +
                            std::to_string(used_radius) + ", count " + std::to_string(cur.size()) +
                            ")");
    if (stabilized_radius) *stabilized_radius = used_radius;
    return cur;
}

inline void check_resolvable(double len) {
    if (len > kQuadLengthCap)
        throw realize_error("geodesic of length " + std::to_string(len) +
                            " exceeds the certified crossing-resolution range");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Axis-linking method: enumerate candidate deck elements h as products
// (prefix_m) * u * (prefix_m')^-1 with u in a radius ball, record lifts whose
// axis crosses the base period, and grow the radius until the crossing set
// stabilizes.  Insufficient radius raises realize_error; precision is chosen
// by curve length, with an explicit refusal beyond the certified range.
// ---------------------------------------------------------------------------

// Self-crossings of the primitive class w (one period), axis-linking method.
inline std::vector<Crossing> self_crossings_axis(const PuncturedTorusStructure& X,
                                                 const CyclicWord& w,
                                                 const AxisMethodOptions& opt = {},
                                                 int* stabilized_radius = nullptr) {
    if (!w.primitive()) throw std::domain_error("self-crossings need a primitive class");
    if (w.peripheral()) throw std::domain_error("peripheral class has no geodesic");
    Mat2 g = X.represent(w);
    auto f = detail::AxisFrame::build(g);
    detail::check_resolvable(f.len);
    if (f.len <= detail::kLongDoubleLengthCap)
        return detail::axis_crossings_stabilized<long double>(X, f, f, w.str(), w.str(), true, opt,
                                                              stabilized_radius);
    return detail::axis_crossings_stabilized<__float128>(X, f, f, w.str(), w.str(), true, opt,
                                                         stabilized_radius);
}

// Pairwise geometric intersections of distinct primitive classes v, w.
inline std::vector<Crossing> pair_crossings_axis(const PuncturedTorusStructure& X,
                                                 const CyclicWord& v, const CyclicWord& w,
                                                 const AxisMethodOptions& opt = {}) {
    if (!v.primitive() || !w.primitive())
        throw std::domain_error("intersection needs primitive classes");
    if (v.peripheral() || w.peripheral())
        throw std::domain_error("peripheral class has no geodesic");
    if (v == w) throw std::domain_error("self case routed to realize");
    Mat2 gv = X.represent(v), gw = X.represent(w);
    auto fv = detail::AxisFrame::build(gv);
    auto fw = detail::AxisFrame::build(gw);
    detail::check_resolvable(fv.len);
    detail::check_resolvable(fw.len);
    if (std::max(fv.len, fw.len) <= detail::kLongDoubleLengthCap)
        return detail::axis_crossings_stabilized<long double>(X, fv, fw, v.str(), w.str(), false,
                                                              opt, nullptr);
    return detail::axis_crossings_stabilized<__float128>(X, fv, fw, v.str(), w.str(), false, opt,
                                                         nullptr);
}

// ---------------------------------------------------------------------------
// Fundamental-domain method: unfold one period through the ideal
// quadrilateral domain with vertices (q, Aq, ABq, Bq), q the fixed point of
// the parabolic A^-1 B^-1 A B, then intersect the visited lifts pairwise.
// ---------------------------------------------------------------------------

namespace detail {

struct SideForm {
    // geodesic as quadratic form A(x^2+y^2) + Bx + C, sign fixed so the
    // domain interior is positive
    double qa, qb, qc;
    Mat2 neighbor;  // deck element of the copy across this side

    double eval(const std::complex<double>& z) const {
        return qa * std::norm(z) + qb * z.real() + qc;
    }
};

struct Domain {
    std::array<SideForm, 4> sides;
    std::array<std::pair<BoundaryPoint, BoundaryPoint>, 4> side_ends;
    std::complex<double> interior;

    static SideForm side_from(const BoundaryPoint& e1, const BoundaryPoint& e2) {
        SideForm s{};
        s.qa = e1.v * e2.v;
        s.qb = -(e1.u * e2.v + e2.u * e1.v);
        s.qc = e1.u * e2.u;
        double n = std::max({std::abs(s.qa), std::abs(s.qb), std::abs(s.qc)});
        if (n < 1e-300) throw realize_error("degenerate domain side");
        s.qa /= n; s.qb /= n; s.qc /= n;
        return s;
    }

    static std::complex<double> geodesic_crossing(const BoundaryPoint& a1, const BoundaryPoint& a2,
                                                  const BoundaryPoint& b1, const BoundaryPoint& b2) {
        SideForm f = side_from(a1, a2), g = side_from(b1, b2);
        double det = f.qa * g.qb - g.qa * f.qb;
        if (std::abs(det) < 1e-14) throw realize_error("degenerate diagonal crossing");
        double r2 = (f.qb * g.qc - g.qb * f.qc) / det;
        double x = (g.qa * f.qc - f.qa * g.qc) / det;
        double y2 = r2 - x * x;
        if (y2 <= 0) throw realize_error("diagonals fail to cross inside");
        return {x, std::sqrt(y2)};
    }

    static Domain build(const PuncturedTorusStructure& X) {
        Mat2 K = X.represent("ABab");  // a^-1 b^-1 a b
        if (std::abs(std::abs(K.trace()) - 2.0) > 1e-9)
            throw realize_error("vertex cycle element is not parabolic");
        double sign = K.trace() > 0 ? 1.0 : -1.0;
        BoundaryPoint q;
        {
            double r1u = K.b, r1v = sign - K.a;
            double r2u = sign - K.d, r2v = K.c;
            q = (std::hypot(r1u, r1v) >= std::hypot(r2u, r2v)) ? BoundaryPoint{r1u, r1v}
                                                               : BoundaryPoint{r2u, r2v};
            q = q.normalized();
        }
        const Mat2& A = X.generator_a();
        const Mat2& B = X.generator_b();
        BoundaryPoint v0 = q;
        BoundaryPoint v1 = apply(A, q);
        BoundaryPoint v2 = apply(A * B, q);
        BoundaryPoint v3 = apply(B, q);
        {
            BoundaryPoint v2b = apply(B * A, q);
            double mismatch = std::abs(v2.u * v2b.v - v2.v * v2b.u);
            if (mismatch > 1e-8) throw realize_error("domain vertices fail ABq == BAq");
        }
        Domain d;
        d.interior = geodesic_crossing(v0, v2, v1, v3);
        auto make = [&](const BoundaryPoint& e1, const BoundaryPoint& e2, const Mat2& n) {
            SideForm s = side_from(e1, e2);
            if (s.eval(d.interior) < 0) { s.qa = -s.qa; s.qb = -s.qb; s.qc = -s.qc; }
            s.neighbor = n;
            return s;
        };
        d.sides[0] = make(v0, v3, A.inverse());
        d.sides[1] = make(v1, v2, A);
        d.sides[2] = make(v0, v1, B.inverse());
        d.sides[3] = make(v3, v2, B);
        d.side_ends[0] = {v0, v3};
        d.side_ends[1] = {v1, v2};
        d.side_ends[2] = {v0, v1};
        d.side_ends[3] = {v3, v2};
        return d;
    }

    // deck u with z in u * domain
    Mat2 locate(std::complex<double> z, int max_steps = 20000) const {
        Mat2 u;
        std::complex<double> w = z;
        for (int step = 0; step < max_steps; ++step) {
            int worst = -1;
            double worst_val = -1e-12;
            for (int i = 0; i < 4; ++i) {
                double v = sides[i].eval(w);
                if (v < worst_val) { worst_val = v; worst = i; }
            }
            if (worst < 0) return u;
            u = u * sides[worst].neighbor;
            w = sides[worst].neighbor.inverse().mobius(w);
        }
        throw realize_error("fundamental-domain point location failed to converge");
    }
};

// Unfold the axis of g across the tessellation for params [t0, t0 + span),
// returning the deck elements h_k with the visited lifts h_k * axis.
// Exit parameters are computed exactly: in frame coordinates the side form
// along the axis is monotone in t, so each side of the current copy crosses
// the axis at one solvable parameter, and the exit is the nearest one ahead.
// Validated by the period-closure identity u_final = g * u_0.
template <typename F>
std::vector<TMat2<F>> unfold_lifts(const PuncturedTorusStructure& X, const Domain& dom,
                                   const AxisFrame& f, const Mat2& g, double t0, double span,
                                   std::vector<double>* cut_params = nullptr) {
    std::complex<double> z0 = f.from_frame(t0);
    Mat2 u0 = dom.locate(z0);
    TMat2<F> u{u0};
    TMat2<F> frame{f.fwd};
    std::vector<TMat2<F>> lifts;
    std::vector<double> cuts;
    double t = t0;
    int guard = 0;
    while (t < t0 + span - 1e-10) {
        if (++guard > 200000) throw realize_error("unfolding failed to advance");
        lifts.push_back(u.inverse());
        cuts.push_back(t);
        // sides of u * domain in frame coordinates: boundary roots r1, r2 of
        // side i are the images of its ideal endpoints under frame * u
        TMat2<F> M = frame * u;
        double exit_t = std::numeric_limits<double>::infinity();
        int exit_side = -1;
        for (int i = 0; i < 4; ++i) {
            auto root = [&](const BoundaryPoint& e) -> std::pair<F, bool> {
                F x = M.a * F(e.u) + M.b * F(e.v);
                F yv = M.c * F(e.u) + M.d * F(e.v);
                F ax = ext_abs(x), ay = ext_abs(yv);
                if (ay < F(1e-30) * (ax + ay)) return {F(0), false};  // endpoint at infinity
                return {x / yv, true};
            };
            auto [r1, ok1] = root(dom.side_ends[i].first);
            auto [r2, ok2] = root(dom.side_ends[i].second);
            if (!ok1 || !ok2) continue;  // a side through the frame end never cuts the axis ahead
            if (!(r1 * r2 < 0)) continue;
            F y2 = -r1 * r2;
            double tc = 0.5 * double(ext_log(y2));
            if (tc > t + 1e-11 && tc < exit_t) { exit_t = tc; exit_side = i; }
        }
        if (exit_side < 0) throw realize_error("axis never exits domain copy");
        t = exit_t;
        if (t >= t0 + span - 1e-10) break;  // the period ends inside this copy
        u = u * TMat2<F>(dom.sides[exit_side].neighbor);
    }
    // period closure: the copy at t0 + span must be g * u0 when span == len
    if (std::abs(span - f.len) < 1e-9) {
        Mat2 want = g * u0;
        Mat2 got = u.to_mat2();
        double same = std::max({std::abs(want.a - got.a), std::abs(want.b - got.b),
                                std::abs(want.c - got.c), std::abs(want.d - got.d)});
        double flip = std::max({std::abs(want.a + got.a), std::abs(want.b + got.b),
                                std::abs(want.c + got.c), std::abs(want.d + got.d)});
        double scale = 1.0 + std::max({std::abs(want.a), std::abs(want.b), std::abs(want.c),
                                       std::abs(want.d)});
        if (std::min(same, flip) > 1e-5 * scale)
            throw realize_error("unfolding failed the period-closure check");
    }
    if (cut_params) *cut_params = cuts;
    return lifts;
}

template <typename F>
std::vector<Crossing> self_crossings_domain_impl(const PuncturedTorusStructure& X,
                                                 const AxisFrame& f, const Mat2& g,
                                                 const Domain& dom, double t_start) {
    auto lifts = unfold_lifts<F>(X, dom, f, g, t_start, f.len);
    std::vector<Crossing> found;
    for (size_t i = 0; i < lifts.size(); ++i) {
        for (size_t j = i + 1; j < lifts.size(); ++j) {
            TMat2<F> h12 = lifts[i].inverse() * lifts[j];
            Mat2 hd = h12.to_mat2();
            Mat2 ht = f.fwd * hd * f.inv;
            double s = std::max(std::abs(ht.a), std::abs(ht.d));
            if (std::abs(ht.b) < 1e-9 * s && std::abs(ht.c) < 1e-9 * s) continue;  // same lift
            auto c = crossing_of<F>(f, f, h12);
            if (c) {
                if (c->t2 < c->t1) std::swap(c->t1, c->t2);
                found.push_back(*c);
            }
        }
    }
    dedupe_crossings(found);
    return found;
}

template <typename F>
std::vector<Crossing> pair_crossings_domain_impl(const PuncturedTorusStructure& X,
                                                 const AxisFrame& fv, const AxisFrame& fw,
                                                 const Mat2& gv, const Mat2& gw, const Domain& dom,
                                                 double t_start) {
    auto lv = unfold_lifts<F>(X, dom, fv, gv, t_start, fv.len);
    auto lw = unfold_lifts<F>(X, dom, fw, gw, t_start, fw.len);
    std::vector<Crossing> found;
    for (const auto& hv : lv) {
        for (const auto& hw : lw) {
            TMat2<F> h12 = hv.inverse() * hw;
            auto c = crossing_of<F>(fv, fw, h12);
            if (c) found.push_back(*c);
        }
    }
    dedupe_crossings(found);
    return found;
}

}  // namespace detail

// Self-crossings via the fundamental-domain unfolding.  Failed walks retry
// from a shifted period cut before giving up.
inline std::vector<Crossing> self_crossings_domain(const PuncturedTorusStructure& X,
                                                   const CyclicWord& w) {
    if (!w.primitive()) throw std::domain_error("self-crossings need a primitive class");
    if (w.peripheral()) throw std::domain_error("peripheral class has no geodesic");
    Mat2 g = X.represent(w);
    auto f = detail::AxisFrame::build(g);
    detail::check_resolvable(f.len);
    auto dom = detail::Domain::build(X);

    std::string last_err;
    for (double t_start : {0.0379, 0.1736, 0.3191, 0.4577}) {
        try {
            if (f.len <= detail::kLongDoubleLengthCap)
                return detail::self_crossings_domain_impl<long double>(X, f, g, dom, t_start);
            return detail::self_crossings_domain_impl<__float128>(X, f, g, dom, t_start);
        } catch (const realize_error& e) {
            last_err = e.what();
        }
    }
    throw realize_error("domain method failed for '" + w.str() + "': " + last_err);
}

// Pairwise geometric intersections via the fundamental-domain unfolding.
inline std::vector<Crossing> pair_crossings_domain(const PuncturedTorusStructure& X,
                                                   const CyclicWord& v, const CyclicWord& w) {
    if (v == w) throw std::domain_error("self case routed to realize");
    Mat2 gv = X.represent(v), gw = X.represent(w);
    auto fv = detail::AxisFrame::build(gv);
    auto fw = detail::AxisFrame::build(gw);
    detail::check_resolvable(fv.len);
    detail::check_resolvable(fw.len);
    auto dom = detail::Domain::build(X);

    std::string last_err;
    for (double t_start : {0.0379, 0.1736, 0.3191, 0.4577}) {
        try {
            if (std::max(fv.len, fw.len) <= detail::kLongDoubleLengthCap)
                return detail::pair_crossings_domain_impl<long double>(X, fv, fw, gv, gw, dom,
                                                                       t_start);
            return detail::pair_crossings_domain_impl<__float128>(X, fv, fw, gv, gw, dom, t_start);
        } catch (const realize_error& e) {
            last_err = e.what();
        }
    }
    throw realize_error("domain method failed for pair '" + v.str() + "','" + w.str() +
                        "': " + last_err);
}

// Geometric self-intersection count with the realization data attached.
inline GeodesicRealization realize(const PuncturedTorusStructure& X, const CyclicWord& w,
                                   const AxisMethodOptions& opt = {}) {
    GeodesicRealization r;
    r.word = w;
    r.length = X.length(w);
    int radius = 0;
    r.crossings = self_crossings_axis(X, w, opt, &radius);
    r.stabilized_radius = radius;
    // period arcs from the domain unfolding cuts
    Mat2 g = X.represent(w);
    auto f = detail::AxisFrame::build(g);
    auto dom = detail::Domain::build(X);
    std::vector<double> cuts;
    detail::unfold_lifts<long double>(X, dom, f, g, 0.0379, f.len, &cuts);
    cuts.push_back(0.0379 + f.len);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        r.period_arcs.emplace_back(f.from_frame(cuts[i]), f.from_frame(cuts[i + 1]));
    return r;
}

inline std::size_t self_intersection_number(const PuncturedTorusStructure& X, const CyclicWord& w) {
    return self_crossings_axis(X, w).size();
}

inline std::size_t intersection_number(const PuncturedTorusStructure& X, const CyclicWord& v,
                                       const CyclicWord& w) {
    return pair_crossings_axis(X, v, w).size();
}

}  // namespace curvecount
