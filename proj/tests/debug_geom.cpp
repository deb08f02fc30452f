// scratch diagnostics for the crossing machinery
#include <cstdio>

#include "curvecount/intersections.hpp"

using namespace curvecount;
using namespace curvecount::detail;

static void print_bp(const char* name, const BoundaryPoint& p) {
    if (p.finite())
        printf("%s = %.6f\n", name, p.value());
    else
        printf("%s = inf\n", name);
}

int main() {
    auto X = PuncturedTorusStructure::from_traces(3, 3);
    Mat2 K = X.represent("ABab");
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
    print_bp("q  ", q);
    print_bp("Aq ", apply(A, q));
    print_bp("ABq", apply(A * B, q));
    print_bp("BAq", apply(B * A, q));
    print_bp("Bq ", apply(B, q));

    auto dom = Domain::build(X);
    printf("interior z0 = %g + %gi\n", dom.interior.real(), dom.interior.imag());

    // neighbor consistency: sample a point just outside each side near the
    // side's topmost point, pull back by the neighbor deck, check inside.
    for (int i = 0; i < 4; ++i) {
        const auto& s = dom.sides[i];
        std::complex<double> z_out;
        if (std::abs(s.qa) > 1e-12) {
            double cx = -s.qb / (2 * s.qa);
            double r2 = (s.qb * s.qb - 4 * s.qa * s.qc) / (4 * s.qa * s.qa);
            double r = std::sqrt(std::max(r2, 0.0));
            std::complex<double> top(cx, r);
            // nudge in both vertical directions, keep the outside one
            std::complex<double> up(cx, r * 1.01), down(cx, r * 0.99);
            z_out = (s.eval(up) < 0) ? up : down;
        } else {
            // vertical line x = -qc/qb
            double x = -s.qc / s.qb;
            std::complex<double> left(x - 0.01, 1.0), right(x + 0.01, 1.0);
            z_out = (s.eval(left) < 0) ? left : right;
        }
        auto w = s.neighbor.inverse().mobius(z_out);
        double worst = 1e100;
        for (int j = 0; j < 4; ++j) worst = std::min(worst, dom.sides[j].eval(w));
        printf("side %d: outside sample (%g,%g) eval=%g pulled (%g,%g) min-eval=%g\n", i,
               z_out.real(), z_out.imag(), s.eval(z_out), w.real(), w.imag(), worst);
    }

    // unfold the a-curve
    for (const char* word : {"a", "b", "ab", "aab", "aabb"}) {
        auto w = CyclicWord::canonicalize(word);
        Mat2 g = X.represent(w);
        auto f = AxisFrame::build(g);
        printf("word %s len %g: ", w.str().c_str(), f.len);
        try {
            std::vector<double> cuts;
            auto lifts = unfold_lifts(X, dom, f, g, 0.0379, f.len, &cuts);
            printf("lifts %zu, cuts:", lifts.size());
            for (auto t : cuts) printf(" %.4f", t);
            printf("\n");
        } catch (const std::exception& e) {
            printf("unfold error: %s\n", e.what());
        }
    }
    return 0;
}
