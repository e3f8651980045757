#include "nclandau/wavefunctions.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/quadrature.hpp"

#include <cmath>
#include <vector>

namespace nclandau {

namespace {

// Compensated double-word arithmetic (Dekker/Knuth) over the widest native
// float. The alternating binomial sum is violently ill-conditioned on the
// supported grid (term/result ratios beyond 1e22), so the accumulator keeps
// roughly squared-extended precision; on x86-64 long double that is ~1e-38
// per operation, enough to hold the 1e-12 contract with margin.
using Wide = long double;

struct DD {
    Wide hi = 0.0L, lo = 0.0L;
};

DD two_sum(Wide a, Wide b) {
    const Wide s = a + b;
    const Wide bb = s - a;
    const Wide err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD two_prod(Wide a, Wide b) {
    const Wide p = a * b;
    const Wide err = std::fma(a, b, -p);
    return {p, err};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return two_sum(s.hi, s.lo);
}

DD dd_mul_d(DD a, Wide b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

DD dd_div_d(DD a, Wide b) {
    const Wide q1 = a.hi / b;
    DD p = two_prod(q1, b);
    const Wide r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return two_sum(q1, r);
}

} // namespace

double laguerre_sum(int n, int alpha, double x) {
    if (n < 0 || alpha < 0) throw DomainError("laguerre: n and alpha must be >= 0");
    if (!std::isfinite(x)) throw DomainError("laguerre: x must be finite");
    // t_0 = C(n+alpha, n); t_{m+1} = -t_m x (n-m) / ((m+1)(alpha+m+1))
    DD term{1.0L, 0.0L};
    for (int i = 1; i <= n; ++i) {
        term = dd_mul_d(term, static_cast<Wide>(alpha + i));
        term = dd_div_d(term, static_cast<Wide>(i));
    }
    DD sum = term;
    for (int m = 0; m < n; ++m) {
        // multiply by each exact factor separately; a fused x*(n-m) would
        // round before entering the compensated product
        term = dd_mul_d(term, -static_cast<Wide>(x));
        term = dd_mul_d(term, static_cast<Wide>(n - m));
        term = dd_div_d(term, static_cast<Wide>(m + 1) * (alpha + m + 1));
        sum = dd_add(sum, term);
    }
    return static_cast<double>(sum.hi);
}

double laguerre_recurrence(int n, int alpha, double x) {
    if (n < 0 || alpha < 0) throw DomainError("laguerre: n and alpha must be >= 0");
    if (!std::isfinite(x)) throw DomainError("laguerre: x must be finite");
    if (n == 0) return 1.0;
    Wide lm = 1.0L;
    Wide l = 1.0L + alpha - static_cast<Wide>(x);
    for (int k = 1; k < n; ++k) {
        const Wide next = ((2.0L * k + 1.0L + alpha - x) * l - (k + alpha) * lm) / (k + 1.0L);
        lm = l;
        l = next;
    }
    return static_cast<double>(l);
}

std::complex<double> psi(const PolarLevel& level, double r, double phi, const PhysParams& p) {
    if (level.n < 0) throw DomainError("psi: n must be >= 0");
    if (r < 0.0) throw DomainError("psi: r must be >= 0");
    const DeformedQuantities d = derive(p);
    const int n = level.n;
    const int arho = std::abs(level.rho);
    const double xi = d.xi;
    const double u = xi * r * r;

    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    // log of sqrt(xi/pi) * sqrt(n!/(n+|rho|)!) * e^{-u/2} (sqrt(xi) r)^{|rho|}
    double lg = 0.5 * std::log(xi / M_PI) +
                0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + arho + 1.0)) - 0.5 * u;
    if (arho > 0) {
        if (r == 0.0) return {0.0, 0.0};
        lg += arho * std::log(std::sqrt(xi) * r);
    }
    const double radial = sign * std::exp(lg) * laguerre(n, arho, u);
    return radial * std::polar(1.0, level.rho * phi);
}

double energy_polar(const PolarLevel& level, const PhysParams& p) {
    if (level.n < 0) throw DomainError("energy_polar: n must be >= 0");
    const DeformedQuantities d = derive(p);
    return p.hbar * d.Omega_tilde * (level.n + 0.5 * (std::abs(level.rho) + 1.0)) +
           0.5 * p.hbar * d.omega_c_tilde * level.rho + d.k_eE;
}

double energy_helicity_mapped(const PolarLevel& level, const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    const int arho = std::abs(level.rho);
    const int n_plus = level.n + (arho + level.rho) / 2;
    const int n_minus = level.n + (arho - level.rho) / 2;
    return 0.5 * p.hbar * (d.Omega_plus * n_plus + d.Omega_minus * n_minus + d.Omega_tilde) +
           d.k_eE;
}

double orthonormality_deviation(const PolarLevel& l1, const PolarLevel& l2,
                                const PhysParams& p, int order) {
    p.validate();
    if (l1.n > 20 || l2.n > 20 || std::abs(l1.rho) > 20 || std::abs(l2.rho) > 20)
        throw DomainError("orthonormality_deviation: levels limited to n, |rho| <= 20");
    const double expected = (l1.n == l2.n && l1.rho == l2.rho) ? 1.0 : 0.0;
    if (l1.rho != l2.rho) return std::abs(0.0 - expected);  // exact angular selection

    const int arho = std::abs(l1.rho);
    if (order <= 0) order = 2 * (std::max(l1.n, l2.n) + arho) + 8;
    if (order > 150) throw QuadratureError("orthonormality_deviation: order exceeds table");
    const QuadratureRule rule = gauss_laguerre(order);

    // In u = xi r^2 the overlap becomes
    //   sqrt(n1! n2! / ((n1+|rho|)! (n2+|rho|)!)) int_0^inf e^-u u^|rho| L_n1 L_n2 du
    const double logpref = 0.5 * (std::lgamma(l1.n + 1.0) + std::lgamma(l2.n + 1.0) -
                                  std::lgamma(l1.n + arho + 1.0) - std::lgamma(l2.n + arho + 1.0));
    const double pref = std::exp(logpref);
    const double integral = rule.integrate([&](double u) {
        return std::pow(u, arho) * laguerre(l1.n, arho, u) * laguerre(l2.n, arho, u);
    });
    const double sign = ((l1.n + l2.n) % 2 == 0) ? 1.0 : -1.0;
    return std::abs(sign * pref * integral - expected);
}

std::vector<SpectrumComparisonRow> spectrum_comparison(const PhysParams& p, int n_max,
                                                       int rho_max) {
    const DeformedQuantities d = derive(p);
    std::vector<SpectrumComparisonRow> rows;
    rows.reserve((n_max + 1) * (2 * rho_max + 1));
    for (int n = 0; n <= n_max; ++n)
        for (int rho = -rho_max; rho <= rho_max; ++rho) {
            SpectrumComparisonRow row{};
            row.n = n;
            row.rho = rho;
            row.energy_polar = energy_polar({n, rho}, p);
            row.energy_helicity = energy_helicity_mapped({n, rho}, p);
            row.ratio_shifted = (row.energy_polar - d.k_eE) / (row.energy_helicity - d.k_eE);
            rows.push_back(row);
        }
    return rows;
}

} // namespace nclandau
