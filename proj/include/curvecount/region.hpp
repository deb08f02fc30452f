#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvecount/lattice.hpp"
#include "curvecount/numeric.hpp"

namespace curvecount {

// A bounded convex region in the closed first quadrant with exact rational
// boundary data.  Containment of an integer point in the L-scaled region is
// decided exactly; regions are closed (boundary points count as inside).
class Region {
  public:
    enum class Kind { triangle, rectangle, polygon };

    // Triangle {(x,y) : a x + b y <= 1, x,y > 0}.
    static Region triangle(Rational a, Rational b) {
        if (!(Rational(0) < a) || !(Rational(0) < b))
            throw std::domain_error("triangle needs positive coefficients");
        Region r;
        r.kind_ = Kind::triangle;
        r.tri_a_ = a;
        r.tri_b_ = b;
        return r;
    }

    // Axis-aligned rectangle [x0,x1] x [y0,y1].
    static Region rectangle(Rational x0, Rational x1, Rational y0, Rational y1) {
        if (!(x0 < x1) || !(y0 < y1)) throw std::domain_error("rectangle needs positive extent");
        if (x0.num() < 0 || y0.num() < 0)
            throw std::domain_error("region must sit in the closed first quadrant");
        Region r;
        r.kind_ = Kind::rectangle;
        r.rect_ = {x0, x1, y0, y1};
        return r;
    }

    static Region unit_square() { return rectangle(Rational(0), Rational(1), Rational(0), Rational(1)); }

    // Convex polygon from counterclockwise rational vertices.
    static Region polygon(std::vector<std::pair<Rational, Rational>> vertices) {
        if (vertices.size() < 3) throw std::domain_error("polygon needs at least 3 vertices");
        Region r;
        r.kind_ = Kind::polygon;
        r.poly_ = std::move(vertices);
        for (auto& [vx, vy] : r.poly_)
            if (vx.num() < 0 || vy.num() < 0)
                throw std::domain_error("region must sit in the closed first quadrant");
        // convexity / orientation check via cross products
        size_t n = r.poly_.size();
        for (size_t i = 0; i < n; ++i) {
            auto& p0 = r.poly_[i];
            auto& p1 = r.poly_[(i + 1) % n];
            auto& p2 = r.poly_[(i + 2) % n];
            Rational cross = (p1.first - p0.first) * (p2.second - p1.second) -
                             (p1.second - p0.second) * (p2.first - p1.first);
            if (cross < Rational(0)) throw std::domain_error("polygon must be convex and counterclockwise");
        }
        return r;
    }

    Kind kind() const { return kind_; }

    // Exact test: is the integer point p inside L * region (closed)?
    bool contains_scaled(const LatticePoint& p, std::int64_t L) const {
        switch (kind_) {
            case Kind::triangle: {
                // a x + b y <= L  with a = an/ad, b = bn/bd:
                // an*bd*x + bn*ad*y <= L*ad*bd
                __int128 lhs = (__int128)tri_a_.num() * tri_b_.den() * p.x +
                               (__int128)tri_b_.num() * tri_a_.den() * p.y;
                __int128 rhs = (__int128)L * tri_a_.den() * tri_b_.den();
                return lhs <= rhs;
            }
            case Kind::rectangle: {
                auto ge = [&](std::int64_t v, const Rational& bound) {
                    return (__int128)v * bound.den() >= (__int128)bound.num() * L;
                };
                auto le = [&](std::int64_t v, const Rational& bound) {
                    return (__int128)v * bound.den() <= (__int128)bound.num() * L;
                };
                return ge(p.x, rect_[0]) && le(p.x, rect_[1]) && ge(p.y, rect_[2]) && le(p.y, rect_[3]);
            }
            case Kind::polygon: {
                size_t n = poly_.size();
                for (size_t i = 0; i < n; ++i) {
                    auto& [ax, ay] = poly_[i];
                    auto& [bx, by] = poly_[(i + 1) % n];
                    // point must be left of (or on) the directed edge L*a -> L*b:
                    // (bx-ax)*(y - L*ay) - (by-ay)*(x - L*ax) >= 0, cleared of denominators
                    Rational ex = bx - ax, ey = by - ay;
                    // common denominator D for ex, ey, ax, ay
                    __int128 t1 = (__int128)ex.num() * ey.den() *
                                  ((__int128)p.y * ax.den() * ay.den() - (__int128)L * ay.num() * ax.den());
                    __int128 t2 = (__int128)ey.num() * ex.den() *
                                  ((__int128)p.x * ax.den() * ay.den() - (__int128)L * ax.num() * ay.den());
                    if (t1 - t2 < 0) return false;
                }
                return true;
            }
        }
        return false;
    }

    // Smallest integer B such that every point of L * region has x + y <= B.
    std::int64_t sum_bound(std::int64_t L) const {
        Rational m = max_linear(Rational(1), Rational(1));
        return ceil_scaled(m, L);
    }
    std::int64_t x_bound(std::int64_t L) const { return ceil_scaled(max_linear(Rational(1), Rational(0)), L); }
    std::int64_t y_bound(std::int64_t L) const { return ceil_scaled(max_linear(Rational(0), Rational(1)), L); }

    // Exact area (shoelace for polygons).
    Rational area() const {
        switch (kind_) {
            case Kind::triangle:
                return Rational(1, 2) / (tri_a_ * tri_b_);
            case Kind::rectangle:
                return (rect_[1] - rect_[0]) * (rect_[3] - rect_[2]);
            case Kind::polygon: {
                Rational twice(0);
                size_t n = poly_.size();
                for (size_t i = 0; i < n; ++i) {
                    auto& [ax, ay] = poly_[i];
                    auto& [bx, by] = poly_[(i + 1) % n];
                    twice = twice + (ax * by - bx * ay);
                }
                return twice * Rational(1, 2);
            }
        }
        return Rational(0);
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::triangle:
                return "triangle{" + tri_a_.str() + "x+" + tri_b_.str() + "y<=1}";
            case Kind::rectangle:
                return "rect[" + rect_[0].str() + "," + rect_[1].str() + "]x[" + rect_[2].str() +
                       "," + rect_[3].str() + "]";
            case Kind::polygon:
                return "polygon(" + std::to_string(poly_.size()) + " vertices)";
        }
        return "";
    }

  private:
    // max of (cx*x + cy*y) over the region, exact.
    Rational max_linear(Rational cx, Rational cy) const {
        switch (kind_) {
            case Kind::triangle: {
                // vertices (0,0), (1/a, 0), (0, 1/b) (closure)
                Rational v1 = cx / tri_a_;
                Rational v2 = cy / tri_b_;
                Rational best = Rational(0);
                if (best < v1) best = v1;
                if (best < v2) best = v2;
                return best;
            }
            case Kind::rectangle: {
                Rational best = cx * rect_[0] + cy * rect_[2];
                for (auto& vx : {rect_[0], rect_[1]})
                    for (auto& vy : {rect_[2], rect_[3]}) {
                        Rational v = cx * vx + cy * vy;
                        if (best < v) best = v;
                    }
                return best;
            }
            case Kind::polygon: {
                Rational best = cx * poly_[0].first + cy * poly_[0].second;
                for (auto& [vx, vy] : poly_) {
                    Rational v = cx * vx + cy * vy;
                    if (best < v) best = v;
                }
                return best;
            }
        }
        return Rational(0);
    }

    static std::int64_t ceil_scaled(const Rational& r, std::int64_t L) {
        __int128 num = (__int128)r.num() * L;
        __int128 den = r.den();
        __int128 q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return (std::int64_t)q;
    }

    Kind kind_ = Kind::rectangle;
    Rational tri_a_{1}, tri_b_{1};
    std::array<Rational, 4> rect_{Rational(0), Rational(1), Rational(0), Rational(1)};
    std::vector<std::pair<Rational, Rational>> poly_;
};

}  // namespace curvecount
