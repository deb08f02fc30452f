#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "curvecount/words.hpp"

namespace curvecount {

// Real 2x2 matrices acting on the upper half-plane; stored det-normalized.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    Mat2 operator*(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const { return Mat2{d, -b, -c, a}; }  // det == 1

    Mat2 normalized() const {
        double s = std::sqrt(std::abs(det()));
        if (s == 0.0) throw std::domain_error("singular matrix");
        return Mat2{a / s, b / s, c / s, d / s};
    }

    std::complex<double> mobius(const std::complex<double>& z) const {
        return (a * z + b) / (c * z + d);
    }
};

// A projective boundary point (u : v) of the half-plane, i.e. u/v in R u {oo}.
struct BoundaryPoint {
    double u = 0, v = 1;

    static BoundaryPoint from_real(double x) { return {x, 1}; }
    static BoundaryPoint infinity() { return {1, 0}; }

    BoundaryPoint normalized() const {
        double n = std::hypot(u, v);
        if (n == 0) throw std::domain_error("null boundary vector");
        double su = u / n, sv = v / n;
        if (sv < 0 || (sv == 0 && su < 0)) { su = -su; sv = -sv; }
        return {su, sv};
    }

    bool finite(double tol = 1e-13) const { return std::abs(v) > tol * std::hypot(u, v); }
    double value() const { return u / v; }
};

inline BoundaryPoint apply(const Mat2& m, const BoundaryPoint& p) {
    return BoundaryPoint{m.a * p.u + m.b * p.v, m.c * p.u + m.d * p.v}.normalized();
}

// Fixed points of a hyperbolic element: (repelling, attracting).
struct AxisEndpoints {
    BoundaryPoint repelling, attracting;
};

inline AxisEndpoints axis_endpoints(const Mat2& m) {
    double t = m.trace();
    double disc = t * t - 4.0;
    if (disc <= 0) throw std::domain_error("axis of a non-hyperbolic element");
    double root = std::sqrt(disc);
    double mu_big = (std::abs(t + root) > std::abs(t - root)) ? (t + root) / 2 : (t - root) / 2;
    double mu_small = 1.0 / mu_big;  // det 1
    auto eigenvector = [&](double mu) {
        // (m - mu I) v = 0; pick the larger of the two candidate rows
        double r1u = m.b, r1v = mu - m.a;
        double r2u = mu - m.d, r2v = m.c;
        if (std::hypot(r1u, r1v) >= std::hypot(r2u, r2v))
            return BoundaryPoint{r1u, r1v}.normalized();
        return BoundaryPoint{r2u, r2v}.normalized();
    };
    return {eigenvector(mu_small), eigenvector(mu_big)};
}

// A cusped hyperbolic structure on the once-punctured torus, built from the
// trace pair (x, y): z is the smaller root of z^2 - (xy) z + x^2 + y^2 = 0
// and the realized generators satisfy tr[Ma,Mb] = -2.
class PuncturedTorusStructure {
  public:
    static PuncturedTorusStructure from_traces(double x, double y) {
        if (!(x > 2.0) || !(y > 2.0))
            throw std::domain_error("need traces x, y > 2");
        double disc = x * x * y * y - 4.0 * (x * x + y * y);
        if (disc < 0)
            throw std::domain_error("no real cusped structure for these traces");
        double z = (x * y - std::sqrt(disc)) / 2.0;
        if (!(z > 2.0)) throw std::domain_error("degenerate trace triple");

        PuncturedTorusStructure s;
        s.x_ = x; s.y_ = y; s.z_ = z;
        double lambda = (x + std::sqrt(x * x - 4.0)) / 2.0;
        s.ma_ = Mat2{lambda, 1.0, 0.0, 1.0 / lambda};
        double denom = lambda - 1.0 / lambda;
        double p = (z - 1.0 - y / lambda) / denom;
        double sd = y - p;
        double q = p * sd - 1.0;
        s.mb_ = Mat2{p, q, 1.0, sd};

        double comm = commutator_trace(s.ma_, s.mb_);
        if (std::abs(comm + 2.0) > 1e-9)
            throw std::domain_error("commutator trace check failed: " + std::to_string(comm));
        return s;
    }

    double trace_x() const { return x_; }
    double trace_y() const { return y_; }
    double trace_z() const { return z_; }
    const Mat2& generator_a() const { return ma_; }
    const Mat2& generator_b() const { return mb_; }

    Mat2 represent(const std::string& word) const {
        Mat2 m;
        Mat2 ia = ma_.inverse(), ib = mb_.inverse();
        for (char c : word) {
            switch (c) {
                case 'a': m = m * ma_; break;
                case 'A': m = m * ia; break;
                case 'b': m = m * mb_; break;
                case 'B': m = m * ib; break;
                default: throw std::domain_error("bad letter in word");
            }
        }
        return m;
    }
    Mat2 represent(const CyclicWord& w) const { return represent(w.str()); }

    // Geodesic length: 2 arccosh(|tr|/2).  Rejects peripheral/elliptic input.
    double length(const CyclicWord& w) const {
        double t = std::abs(represent(w).trace());
        if (t <= 2.0 + 1e-12)
            throw std::domain_error("word is peripheral or elliptic; no geodesic length");
        return 2.0 * std::acosh(t / 2.0);
    }

    double systole_hint() const {
        double t = std::min(std::min(x_, y_), z_);
        return 2.0 * std::acosh(t / 2.0);
    }

    static double commutator_trace(const Mat2& a, const Mat2& b) {
        return (a * b * a.inverse() * b.inverse()).trace();
    }

  private:
    double x_ = 3, y_ = 3, z_ = 3;
    Mat2 ma_, mb_;
};

}  // namespace curvecount
