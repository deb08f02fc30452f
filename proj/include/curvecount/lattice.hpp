#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "curvecount/numeric.hpp"

namespace curvecount {

// A point of the open positive quadrant of the integer lattice: the torus
// coordinates of an integral measured lamination.  Axis classes (p,0), (0,q)
// are handled separately by the census layer.
struct LatticePoint {
    std::int64_t x = 1;
    std::int64_t y = 1;

    LatticePoint() = default;
    LatticePoint(std::int64_t px, std::int64_t py) : x(px), y(py) {
        if (x < 1 || y < 1) throw std::domain_error("lattice point needs x >= 1 and y >= 1");
    }

    bool operator==(const LatticePoint&) const = default;
    auto operator<=>(const LatticePoint&) const = default;

    std::int64_t sum() const { return checked_add(x, y); }
    std::int64_t max() const { return std::max(x, y); }
};

enum class Norm { sum, max };

inline std::int64_t norm_of(const LatticePoint& p, Norm n) {
    return n == Norm::sum ? p.sum() : p.max();
}

// Non-negative unimodular 2x2 matrix; the free semigroup on the two
// elementary generators.
struct SemigroupElement {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    SemigroupElement() = default;
    SemigroupElement(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (a < 0 || b < 0 || c < 0 || d < 0)
            throw std::domain_error("semigroup element needs non-negative entries");
        if (checked_sub(checked_mul(a, d), checked_mul(b, c)) != 1)
            throw std::domain_error("semigroup element needs determinant 1");
    }

    static SemigroupElement lower() { return SemigroupElement(1, 0, 1, 1); }  // (x,y) -> (x, x+y)
    static SemigroupElement upper() { return SemigroupElement(1, 1, 0, 1); }  // (x,y) -> (x+y, y)

    SemigroupElement operator*(const SemigroupElement& o) const {
        return SemigroupElement(checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
                                checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
                                checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
                                checked_add(checked_mul(c, o.b), checked_mul(d, o.d)));
    }

    LatticePoint apply(const LatticePoint& p) const {
        return LatticePoint(checked_add(checked_mul(a, p.x), checked_mul(b, p.y)),
                            checked_add(checked_mul(c, p.x), checked_mul(d, p.y)));
    }

    // Unique generator-word factorization (left to right), recovered by
    // peeling inverse generators off the left.  'U' is upper, 'L' lower.
    std::string word() const {
        std::string out;
        std::int64_t pa = a, pb = b, pc = c, pd = d;
        while (!(pa == 1 && pb == 0 && pc == 0 && pd == 1)) {
            if (pa >= pc && pb >= pd && (pa > pc || pb > pd)) {
                pa -= pc; pb -= pd;  // U * M has row1 >= row2
                out.push_back('U');
            } else if (pc >= pa && pd >= pb) {
                pc -= pa; pd -= pb;
                out.push_back('L');
            } else {
                throw std::domain_error("not a product of the two generators");
            }
        }
        return out;
    }

    bool operator==(const SemigroupElement&) const = default;
};

// The unique minimal point of the orbit containing p.  The subtractive Euclid
// trajectory (x,y) -> (x-y,y) or (x,y-x) ends at (g,g) with g = gcd(x,y); we
// use the remainder form, which lands on the same point.
inline LatticePoint orbit_root(const LatticePoint& p) {
    std::int64_t g = std::gcd(p.x, p.y);
    return LatticePoint(g, g);
}

// True iff q lies on the subtractive trajectory from p (inclusive);
// equivalently some semigroup element maps q to p.  Runs the remainder form
// and tests membership in each same-side block of the subtractive chain.
inline bool in_orbit(const LatticePoint& p, const LatticePoint& q) {
    std::int64_t x = p.x, y = p.y;
    while (true) {
        if (x == q.x && y == q.y) return true;
        if (x > y) {
            // block of visited points (x - k*y, y), k = 1.., down to r (or y if r == 0)
            if (q.y == y && q.x < x && (x - q.x) % y == 0) {
                std::int64_t r = x % y;
                std::int64_t lowest = (r == 0) ? y : r;
                if (q.x >= lowest) return true;
            }
            std::int64_t r = x % y;
            x = (r == 0) ? y : r;
        } else if (y > x) {
            if (q.x == x && q.y < y && (y - q.y) % x == 0) {
                std::int64_t r = y % x;
                std::int64_t lowest = (r == 0) ? x : r;
                if (q.y >= lowest) return true;
            }
            std::int64_t r = y % x;
            y = (r == 0) ? x : r;
        } else {
            return x == q.x && y == q.y;
        }
    }
}

// Images of p under the two generators; the orbit is the binary tree this
// step generates.
inline std::pair<LatticePoint, LatticePoint> children(const LatticePoint& p) {
    std::int64_t s = checked_add(p.x, p.y);
    return {LatticePoint(p.x, s), LatticePoint(s, p.y)};
}

// Visit every orbit point with norm <= bound exactly once (pruned tree walk,
// order unspecified).  Returns false from the visitor to stop early.
template <typename Visitor>
void visit_orbit(const LatticePoint& root, std::int64_t bound, Norm norm, Visitor&& visit) {
    if (norm_of(root, norm) > bound) return;
    std::vector<LatticePoint> stack{root};
    while (!stack.empty()) {
        LatticePoint p = stack.back();
        stack.pop_back();
        visit(p);
        auto [c1, c2] = children(p);
        if (norm_of(c1, norm) <= bound) stack.push_back(c1);
        if (norm_of(c2, norm) <= bound) stack.push_back(c2);
    }
}

// All points of the orbit of root with norm <= bound, in lexicographic order.
inline std::vector<LatticePoint> enumerate_orbit(const LatticePoint& root, std::int64_t bound,
                                                 Norm norm = Norm::sum) {
    std::vector<LatticePoint> out;
    visit_orbit(root, bound, norm, [&](const LatticePoint& p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
}

// An invariant set, represented by orbit roots: either an explicit finite
// list (validated pairwise unreachable) or the full diagonal family (d,d),
// d = 1,2,..., whose disjoint orbits cover the whole quadrant.
class InvariantSet {
  public:
    static InvariantSet from_roots(std::vector<LatticePoint> roots) {
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = 0; j < roots.size(); ++j)
                if (i != j && in_orbit(roots[i], roots[j]))
                    throw std::domain_error("roots must lie in pairwise distinct orbits");
        InvariantSet s;
        s.roots_ = std::move(roots);
        std::sort(s.roots_.begin(), s.roots_.end());
        return s;
    }

    // The family of all diagonal roots; denotes the full positive quadrant.
    static InvariantSet full_lattice() {
        InvariantSet s;
        s.diagonal_family_ = true;
        return s;
    }

    bool is_diagonal_family() const { return diagonal_family_; }
    const std::vector<LatticePoint>& roots() const { return roots_; }

    // Roots with min-norm (= sum of coordinates for the root itself) <= bound.
    std::vector<LatticePoint> roots_up_to(std::int64_t sum_bound) const {
        if (!diagonal_family_) {
            std::vector<LatticePoint> out;
            for (const auto& r : roots_)
                if (r.sum() <= sum_bound) out.push_back(r);
            return out;
        }
        std::vector<LatticePoint> out;
        for (std::int64_t d = 1; 2 * d <= sum_bound; ++d) out.emplace_back(d, d);
        return out;
    }

  private:
    std::vector<LatticePoint> roots_;
    bool diagonal_family_ = false;
};

}  // namespace curvecount
