#include "nclandau/coherent.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/quadrature.hpp"

#include <cmath>
#include <vector>

namespace nclandau {

double coherent_tail_bound(double abs_z, int n_trunc) {
    const double a = abs_z * abs_z;
    if (a == 0.0) return 0.0;
    const double x = a * M_E / n_trunc;
    if (x >= 1.0) return 1.0;
    return std::pow(x, n_trunc);
}

Eigen::VectorXcd cs_vector(const CSLabel& label, const FockRep& rep) {
    const int t = rep.n_trunc;
    const double tail = coherent_tail_bound(std::abs(label.z_plus), t) +
                        coherent_tail_bound(std::abs(label.z_minus), t);
    if (tail > 1e-12)
        throw TruncationError("cs_vector: truncation tail mass exceeds 1e-12");

    const double norm2 = std::norm(label.z_plus) + std::norm(label.z_minus);
    Eigen::VectorXcd v(rep.dim());
    // z^n / sqrt(n!) built multiplicatively per mode
    std::vector<std::complex<double>> zp(t), zm(t);
    zp[0] = zm[0] = 1.0;
    for (int n = 1; n < t; ++n) {
        zp[n] = zp[n - 1] * label.z_plus / std::sqrt(static_cast<double>(n));
        zm[n] = zm[n - 1] * std::conj(label.z_minus) / std::sqrt(static_cast<double>(n));
    }
    const double pref = std::exp(-0.5 * norm2);
    for (int np = 0; np < t; ++np)
        for (int nm = 0; nm < t; ++nm) {
            const double e = rep.energy(np, nm);
            v[rep.index(np, nm)] =
                pref * zp[np] * zm[nm] * std::polar(1.0, -label.tau * e);
        }
    return v;
}

double lower_symbol_H(const CSLabel& label, const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    return 0.5 * p.hbar *
               (d.Omega_plus * std::norm(label.z_plus) +
                d.Omega_minus * std::norm(label.z_minus) + d.Omega_tilde) +
           d.k_eE;
}

double lower_symbol_H_numeric(const CSLabel& label, const FockRep& rep) {
    const Eigen::VectorXcd v = cs_vector(label, rep);
    const std::complex<double> e = v.adjoint() * (rep.h_q * v);
    return e.real();
}

double upper_symbol_H(const CSLabel& label, const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    return lower_symbol_H(label, p) - p.hbar * d.Omega_tilde;
}

double resolution_deviation(int n_max, int radial_order) {
    if (n_max < 0) throw DomainError("resolution_deviation: n_max must be >= 0");
    if (radial_order <= 0) radial_order = n_max + 12;
    if (radial_order > 150) throw QuadratureError("resolution_deviation: order exceeds table");
    const QuadratureRule rule = gauss_laguerre(radial_order);

    // Angular integration keeps only equal index pairs; the surviving radial
    // factor per mode index n is (1/n!) int_0^inf e^-u u^n du.
    std::vector<double> moment(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double lognf = std::lgamma(n + 1.0);
        moment[n] = rule.integrate([&](double u) { return std::exp(n * std::log(u) - lognf); });
    }
    double dev = 0.0;
    for (int np = 0; np <= n_max; ++np)
        for (int nm = 0; nm <= n_max; ++nm)
            dev = std::max(dev, std::abs(moment[np] * moment[nm] - 1.0));
    return dev;
}

namespace {

double binom(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double falling(int m, int i) {  // m! / (m-i)!
    return std::exp(std::lgamma(m + 1.0) - std::lgamma(m - i + 1.0));
}

// d^k/dzbar^k [ zbar^mp e^{-zbar z} ]
std::complex<double> deriv_bar(int k, int mp, std::complex<double> z) {
    const std::complex<double> zb = std::conj(z);
    const double e = std::exp(-(z * zb).real());
    std::complex<double> acc = 0.0;
    for (int i = 0; i <= std::min(k, mp); ++i)
        acc += binom(k, i) * falling(mp, i) * std::pow(zb, mp - i) * std::pow(-z, k - i);
    return acc * e;
}

// d^l/dz^l [ z^m e^{-zbar z} ]
std::complex<double> deriv_z(int l, int m, std::complex<double> z) {
    const std::complex<double> zb = std::conj(z);
    const double e = std::exp(-(z * zb).real());
    std::complex<double> acc = 0.0;
    for (int i = 0; i <= std::min(l, m); ++i)
        acc += binom(l, i) * falling(m, i) * std::pow(z, m - i) * std::pow(-zb, l - i);
    return acc * e;
}

} // namespace

double voros_deviation(int order_k, int m, int mp, std::complex<double> z) {
    if (order_k < 0 || order_k > 12) throw DomainError("voros_deviation: order limited to 12");
    if (m < 0 || mp < 0 || m > 8 || mp > 8)
        throw DomainError("voros_deviation: basis indices limited to 8");
    const QuadratureRule rule = gauss_laguerre(order_k + 12);
    const double norm = std::exp(-0.5 * (std::lgamma(m + 1.0) + std::lgamma(mp + 1.0)));

    std::complex<double> series = 0.0, integral = 0.0;
    for (int k = 0; k <= order_k; ++k) {
        const std::complex<double> ab = deriv_bar(k, mp, z) * deriv_z(k, m, z);
        const double logkf = std::lgamma(k + 1.0);
        series += ab * std::exp(-logkf);
        // radial moment int_0^inf e^-u u^k du / k!, angular selection exact
        const double mom =
            rule.integrate([&](double u) { return std::exp(k * std::log(u) - logkf); });
        integral += ab * std::exp(-logkf) * mom;
    }
    return std::abs(series - integral) * norm;
}

std::complex<double> voros_polynomial_term(int k, int m, int mp, std::complex<double> z) {
    if (k > std::min(m, mp)) return {0.0, 0.0};
    const std::complex<double> zb = std::conj(z);
    return std::exp(-std::lgamma(k + 1.0)) * falling(mp, k) * falling(m, k) *
           std::pow(zb, mp - k) * std::pow(z, m - k);
}

} // namespace nclandau
