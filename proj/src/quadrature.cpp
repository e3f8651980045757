#include "nclandau/quadrature.hpp"
#include "nclandau/errors.hpp"

#include <cmath>

namespace nclandau {

QuadratureRule gauss_laguerre(int n, double alpha) {
    // Newton iteration on the recurrence. A dense Golub-Welsch pass loses the
    // exponentially small weights at moderate order, which the moment checks
    // downstream would feel immediately.
    if (n < 1 || n > 150) throw QuadratureError("gauss_laguerre: order out of range");
    if (alpha <= -1.0) throw QuadratureError("gauss_laguerre: alpha must exceed -1");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
        } else if (i == 1) {
            z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
                 (z - rule.nodes[i - 2]) / (1.0 + 0.3 * alpha);
        }
        double pp = 0.0, p2 = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0 + alpha - z) * p2 - (j + alpha) * p3) / (j + 1.0);
            }
            pp = (n * p1 - (n + alpha) * p2) / z;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 3e-14 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw QuadratureError("gauss_laguerre: Newton iteration stalled");
        rule.nodes[i] = z;
        rule.weights[i] =
            -std::exp(std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n))) /
            (pp * n * p2);
    }
    return rule;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureError("adaptive_simpson: recursion limit reached");
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace nclandau
