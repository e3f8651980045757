#include "nclandau/params.hpp"
#include "nclandau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace nclandau {

void PhysParams::validate() const {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!(omega0 > 0.0)) throw DomainError("omega0 must be positive");
    if (!(omega_c >= 0.0)) throw DomainError("omega_c must be non-negative");
    if (!(theta >= 0.0)) throw DomainError("theta must be non-negative");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    if (!(e_charge > 0.0)) throw DomainError("e_charge must be positive");
    if (!(c_light > 0.0)) throw DomainError("c_light must be positive");
    if (!std::isfinite(E1) || !std::isfinite(E2)) throw DomainError("electric field must be finite");
}

PhysParams PhysParams::with_b_shift(double db) const {
    PhysParams q = *this;
    q.omega_c = omega_c + e_charge * db / (mass * c_light);
    return q;
}

DeformedQuantities derive(const PhysParams& p) {
    p.validate();
    DeformedQuantities d{};
    const double M = p.mass, w0 = p.omega0, wc = p.omega_c, th = p.theta, hb = p.hbar;
    d.Omega = std::sqrt(4.0 * w0 * w0 + wc * wc);

    d.radicand = 1.0 - 0.5 * M * wc * th + std::pow(0.25 * M * d.Omega * th, 2);
    if (!(d.radicand > 0.0))
        throw DomainError("deformation outside validity region: radicand <= 0");

    d.Omega_tilde = d.Omega * std::sqrt(d.radicand);
    d.omega_c_tilde = wc - 0.25 * M * th * d.Omega * d.Omega;
    if (d.omega_c_tilde < 0.0)
        throw DomainError("deformation outside validity region: omega_c_tilde < 0");

    d.Omega_plus = 0.5 * (d.Omega_tilde + d.omega_c_tilde);
    d.Omega_minus = 0.5 * (d.Omega_tilde - d.omega_c_tilde);
    d.mu_theta = std::pow(d.radicand, 0.25);
    d.zeta = std::sqrt(M * d.Omega / hb) / d.mu_theta;
    d.xi = 0.5 * M * d.Omega / hb / (d.mu_theta * d.mu_theta);

    // hbar-carrying variants for the commutator-matrix check
    const double rad_h = 1.0 - 0.5 * M * wc * th / hb + std::pow(0.25 * M * d.Omega * th / hb, 2);
    if (!(rad_h > 0.0)) throw DomainError("deformation outside validity region: radicand <= 0");
    const double wc_t_h = wc - 0.25 * M * th * d.Omega * d.Omega / hb;
    d.lambda_plus = M * hb * (d.Omega * std::sqrt(rad_h) + wc_t_h);
    d.lambda_minus = M * hb * (d.Omega * std::sqrt(rad_h) - wc_t_h);

    const double rad_2h = 1.0 - 0.5 * M * wc * th / hb + std::pow(0.5 * M * d.Omega * th / hb, 2);
    d.lambda_variant_plus = M * hb * (d.Omega * std::sqrt(rad_2h) + wc_t_h);
    d.lambda_variant_minus = M * hb * (d.Omega * std::sqrt(rad_2h) - wc_t_h);

    // kappa: same radicand as lambda, opposite sign on the omega0^2 term
    const double wc_kappa = wc - M * th * (0.25 * wc * wc - w0 * w0) / hb;
    d.kappa_plus = M * hb * (d.Omega * std::sqrt(rad_h) + wc_kappa);
    d.kappa_minus = M * hb * (d.Omega * std::sqrt(rad_h) - wc_kappa);

    d.B_hbar = 2.0 * hb * M * w0 * (1.0 - 0.5 * M * wc * th / hb);
    d.x0 = p.e_charge * p.E1 / (M * w0 * w0);
    d.y0 = p.e_charge * p.E2 / (M * w0 * w0);
    d.k_eE = -0.5 * p.e_charge * (p.E1 * d.x0 + p.E2 * d.y0);
    return d;
}

Eigen::Matrix4cd g_matrix(const PhysParams& p) {
    p.validate();
    const double M = p.mass, w0 = p.omega0, wc = p.omega_c, th = p.theta, hb = p.hbar;
    const double b = 1.0 - 0.5 * M * wc * th / hb;
    const double dfac = 1.0 - 0.25 * M * wc * th / hb;
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> q = 2.0 * i * hb * M * w0 * b;

    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    g(0, 0) = 2.0 * M * M * w0 * w0 * th;
    g(1, 1) = -2.0 * M * M * w0 * w0 * th;
    g(2, 2) = 2.0 * hb * M * wc * dfac;
    g(3, 3) = -2.0 * hb * M * wc * dfac;
    g(0, 3) = q;
    g(1, 2) = q;
    g(2, 1) = -q;
    g(3, 0) = -q;
    return g;
}

Eigen::Vector4d g_matrix_eigenvalues(const PhysParams& p) {
    const Eigen::Matrix4cd g = g_matrix(p);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(g);
    if (es.info() != Eigen::Success) throw DomainError("g_matrix eigendecomposition failed");
    Eigen::Vector4d ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + 4, std::greater<double>());
    return ev;
}

double theta_shift(const PhysParams& p) {
    return 0.25 * p.mass * p.omega_c * p.omega_c * p.theta + p.mass * p.omega0 * p.omega0 * p.theta;
}

double b_theta(const PhysParams& p) {
    const double B = p.b_field();
    return 0.5 * p.e_charge * p.theta / p.c_light *
           (0.25 * p.e_charge * B * p.theta / p.c_light - 1.0);
}

double i_factor(const PhysParams& p) {
    const double B = p.b_field();
    return p.e_charge / (p.mass * p.c_light) * (1.0 - 0.5 * p.e_charge * B * p.theta / p.c_light);
}

double k_factor(const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    const double B = p.b_field();
    const double Om2 = d.Omega * d.Omega;
    return p.omega_c * p.e_charge * d.Omega_tilde / (p.mass * p.c_light * Om2) +
           (Om2 / d.Omega_tilde) * 0.25 * p.e_charge * p.theta / p.c_light *
               (0.25 * p.e_charge * B * p.theta / p.c_light - 1.0);
}

double l_factor(const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    const double B = p.b_field();
    return 0.5 * p.e_charge * d.Omega_tilde / (p.mass * p.c_light) *
           (1.0 - 0.5 * p.e_charge * B * p.theta / p.c_light);
}

std::array<ThetaZeroEntry, 7> theta_zero_report(const PhysParams& p) {
    PhysParams q = p;
    q.theta = 0.0;
    const DeformedQuantities d = derive(q);
    const double Mc = q.mass * q.c_light;
    return {{
        {"Omega_tilde", d.Omega_tilde, d.Omega},
        {"omega_c_tilde", d.omega_c_tilde, q.omega_c},
        {"Theta_shift", theta_shift(q), 0.0},
        {"B_theta", b_theta(q), 0.0},
        {"I_factor", i_factor(q), q.e_charge / Mc},
        {"K_factor", k_factor(q), q.e_charge * q.omega_c / (Mc * d.Omega)},
        {"L_factor", l_factor(q), q.e_charge * d.Omega / (2.0 * Mc)},
    }};
}

LambdaVariantReport lambda_variant_report(const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    LambdaVariantReport r{};
    r.lambda_plus = d.lambda_plus;
    r.lambda_minus = d.lambda_minus;
    r.lambda_variant_plus = d.lambda_variant_plus;
    r.lambda_variant_minus = d.lambda_variant_minus;
    r.rel_gap_plus = std::abs(d.lambda_variant_plus - d.lambda_plus) / std::abs(d.lambda_plus);
    r.rel_gap_minus = std::abs(d.lambda_variant_minus - d.lambda_minus) / std::abs(d.lambda_minus);
    return r;
}

} // namespace nclandau
