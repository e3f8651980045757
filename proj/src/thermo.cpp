#include "nclandau/thermo.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace nclandau {

void ThermoInput::validate() const {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!std::isfinite(mu)) throw DomainError("mu must be finite");
    p.validate();
}

namespace {

constexpr double kSeriesTail = 1e-14;

// log(1 + e^t), stable for all t
double softplus(double t) {
    if (t > 35.0) return t + std::exp(-t);
    if (t < -745.0) return 0.0;
    return std::log1p(std::exp(t));
}

double zeta_euler_maclaurin(int s) {
    // direct sum to N plus tail corrections; remainder < 1e-16 for N = 200
    const int N = 200;
    double sum = 0.0, c = 0.0;
    for (int n = 1; n < N; ++n) {
        const double term = std::pow(static_cast<double>(n), -s);
        const double y = term - c;
        const double t2 = sum + y;
        c = (t2 - sum) - y;
        sum = t2;
    }
    const double Nd = N;
    const double fN = std::pow(Nd, -s);
    double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * fN;
    tail += s * std::pow(Nd, -s - 1.0) / 12.0;
    tail -= s * (s + 1.0) * (s + 2.0) * std::pow(Nd, -s - 3.0) / 720.0;
    return sum + tail;
}

} // namespace

double fermi_dirac_F(int s, double z) {
    if (s < 1) throw DomainError("fermi_dirac_F: s must be >= 1");
    if (std::abs(z) > 1.0) throw DomainError("fermi_dirac_F: |z| must be <= 1");
    if (z == 0.0) return 0.0;
    if (z == 1.0) {
        if (s < 2) throw DomainError("fermi_dirac_F: z = 1 requires s >= 2");
        return zeta_euler_maclaurin(s);
    }
    // s = 1 sums to the logarithm exactly; the series bound would need ~1e14
    // terms at z = -1
    if (s == 1) return -std::log1p(-z);

    double sum = 0.0, c = 0.0;
    double zn = 1.0;
    const long max_terms = 50'000'000;
    const double geom = (z > 0.0) ? 1.0 / (1.0 - z) : 1.0;
    for (long n = 1; n <= max_terms; ++n) {
        zn *= z;
        const double nd = static_cast<double>(n);
        double nps = nd;
        for (int k = 1; k < s; ++k) nps *= nd;
        const double term = zn / nps;
        const double y = term - c;
        const double t2 = sum + y;
        c = (t2 - sum) - y;
        sum = t2;

        // certified tail: alternating bound for z < 0, geometric for z > 0
        double np1s = nd + 1.0;
        for (int k = 1; k < s; ++k) np1s *= nd + 1.0;
        if (std::abs(zn * z) * geom < kSeriesTail * np1s) return sum;
    }
    throw ConvergenceError("fermi_dirac_F: series did not reach tail < 1e-14");
}

ControlParams control_params(const ThermoInput& t) {
    t.validate();
    const DeformedQuantities d = derive(t.p);
    ControlParams c{};
    c.mu_eE = t.mu - d.k_eE;
    const double half_gap = 0.5 * t.p.hbar * d.Omega_tilde;
    c.log_kappa_prime_plus = t.beta * (c.mu_eE + half_gap);
    c.log_kappa_prime_minus = t.beta * (c.mu_eE - half_gap);
    c.kappa_prime_plus = std::exp(c.log_kappa_prime_plus);
    c.kappa_prime_minus = std::exp(c.log_kappa_prime_minus);
    c.kappa_plus = std::exp(t.beta * (t.mu + half_gap));
    c.kappa_minus = std::exp(t.beta * (t.mu - half_gap));
    return c;
}

namespace {

struct LatticeSum {
    double value = 0.0;  // sum of softplus terms
    long terms = 0;
    double tail = 0.0;   // certified bound on the dropped softplus mass
};

// sum over i,j >= 0 of log(1 + exp(-beta(E0 + a i + b j - mu))); the
// accumulation is compensated so the rounding stays far below the tail
// certificate even at ~1e5 lattice points
LatticeSum log_lattice_sum(double beta, double mu, double E0, double a, double b,
                           double tol_abs) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DivergenceError("grand potential: spectrum is not increasing in both indices");
    const double qa = std::exp(-beta * a);
    const double qb = std::exp(-beta * b);

    LatticeSum out;
    double comp = 0.0;
    const long max_rows = 4'000'000;
    for (long i = 0;; ++i) {
        if (i > max_rows) throw ConvergenceError("grand potential: row limit exceeded");
        const double t_head = -beta * (E0 + a * i - mu);
        if (t_head < 0.0) {
            const double block = std::exp(t_head) / ((1.0 - qa) * (1.0 - qb));
            if (block < tol_abs / 3.0) {
                out.tail += block;
                break;
            }
        }
        const double row_tol = tol_abs / (3.0 * (i + 1.0) * (i + 2.0));
        for (long j = 0;; ++j) {
            if (j > max_rows) throw ConvergenceError("grand potential: column limit exceeded");
            const double t = t_head - beta * b * j;
            if (t < 0.0) {
                const double rest = std::exp(t) / (1.0 - qb);
                if (rest < row_tol) {
                    out.tail += rest;
                    break;
                }
            }
            const double y = softplus(t) - comp;
            const double s = out.value + y;
            comp = (s - out.value) - y;
            out.value = s;
            ++out.terms;
        }
    }
    return out;
}

} // namespace

GammaResult gamma_exact(const ThermoInput& t, double tol, SpectrumBasis basis) {
    t.validate();
    const DeformedQuantities d = derive(t.p);
    const double hb = t.p.hbar;
    if (!(d.Omega_minus > 0.0))
        throw DivergenceError("gamma_exact: spectrum unbounded below in rho");

    const double tol_abs = tol * t.beta;  // bound on dropped softplus mass
    GammaResult res;
    if (basis == SpectrumBasis::helicity) {
        const LatticeSum s =
            log_lattice_sum(t.beta, t.mu, 0.5 * hb * d.Omega_tilde + d.k_eE,
                            0.5 * hb * d.Omega_plus, 0.5 * hb * d.Omega_minus, tol_abs);
        res.value = -s.value / t.beta;
        res.terms = s.terms;
        res.tail_bound = s.tail / t.beta;
    } else {
        // split the angular index at rho = 0; both half-lattices share the n step
        const LatticeSum s1 =
            log_lattice_sum(t.beta, t.mu, 0.5 * hb * d.Omega_tilde + d.k_eE,
                            hb * d.Omega_tilde, hb * d.Omega_plus, 0.5 * tol_abs);
        const LatticeSum s2 = log_lattice_sum(
            t.beta, t.mu, 0.5 * hb * d.Omega_tilde + hb * d.Omega_minus + d.k_eE,
            hb * d.Omega_tilde, hb * d.Omega_minus, 0.5 * tol_abs);
        res.value = -(s1.value + s2.value) / t.beta;
        res.terms = s1.terms + s2.terms;
        res.tail_bound = (s1.tail + s2.tail) / t.beta;
    }
    return res;
}

double phi_closed_log(double log_kappa_prime, const ThermoInput& t) {
    const double pref =
        4.0 / (t.beta * std::pow(t.beta * t.p.hbar * t.p.omega0, 2));
    if (log_kappa_prime <= 0.0) return pref * fermi_dirac_F(3, -std::exp(log_kappa_prime));
    const double L = log_kappa_prime;
    return pref * (-L * L * L / 6.0 - M_PI * M_PI * L / 6.0 + fermi_dirac_F(3, -std::exp(-L)));
}

double phi_closed(double kappa_prime, const ThermoInput& t) {
    if (!(kappa_prime > 0.0)) throw DomainError("phi_closed: kappa' must be positive");
    return phi_closed_log(std::log(kappa_prime), t);
}

double phi_quadrature(double kappa_prime, const ThermoInput& t, double tol) {
    if (!(kappa_prime > 0.0)) throw DomainError("phi_quadrature: kappa' must be positive");
    const double L = std::max(60.0, std::log(kappa_prime) + 60.0);
    // kappa' u^2 e^-u / (1 + kappa' e^-u) = kappa' u^2 / (e^u + kappa')
    const auto integrand = [kappa_prime](double u) {
        return kappa_prime * u * u / (std::exp(u) + kappa_prime);
    };
    const double scale = std::max(2.0, std::pow(std::log(std::max(kappa_prime, 2.0)), 3));
    const double integral = adaptive_simpson(integrand, 0.0, L, tol * scale);
    return -2.0 * integral / (t.beta * std::pow(t.beta * t.p.hbar * t.p.omega0, 2));
}

std::pair<double, double> berezin_lieb_bounds(const ThermoInput& t) {
    const ControlParams c = control_params(t);
    const double lower = phi_closed_log(c.log_kappa_prime_plus, t);
    const double upper = phi_closed_log(c.log_kappa_prime_minus, t);
    return {lower, upper};
}

LowTempSuite low_temp_suite(const ThermoInput& t) {
    const ControlParams c = control_params(t);
    const DeformedQuantities d = derive(t.p);
    const double hb = t.p.hbar, w0 = t.p.omega0;
    const double mu = c.mu_eE;
    const double hw0 = hb * w0;
    const double inv_bhw0 = 1.0 / (t.beta * hw0);
    const double pi2 = M_PI * M_PI;

    LowTempSuite s{};
    s.A = -2.0 * mu *
          (std::pow(mu / hw0, 2) / 3.0 + 0.25 * std::pow(d.Omega_tilde / w0, 2) +
           pi2 / 3.0 * inv_bhw0 * inv_bhw0);
    s.delta_half = 2.0 * hb * d.Omega_tilde *
                   (0.5 * std::pow(mu / hw0, 2) + std::pow(d.Omega_tilde / w0, 2) / 24.0 +
                    pi2 / 6.0 * inv_bhw0 * inv_bhw0);
    const double pref = 4.0 / (t.beta * std::pow(t.beta * hw0, 2));
    s.S0 = pref * fermi_dirac_F(3, -std::exp(-t.beta * mu));
    s.gamma_approx = s.A + s.S0;
    s.ratio = 2.0 * s.delta_half / std::abs(s.gamma_approx);

    const double inv_bmu = 1.0 / (t.beta * mu);
    s.n_electrons = 4.0 * std::pow(mu / hw0, 2) *
                    (0.5 + 0.125 * std::pow(hb * d.Omega_tilde / mu, 2) +
                     pi2 / 6.0 * inv_bmu * inv_bmu +
                     inv_bmu * inv_bmu * fermi_dirac_F(2, -std::exp(-t.beta * mu)));
    s.n_electrons_leading = 2.0 * std::pow(mu / hw0, 2);
    s.valid_mu_gg_gap = mu > 5.0 * (0.5 * hb * d.Omega_tilde);
    s.valid_mu_gg_T = t.beta * mu > 10.0;
    return s;
}

namespace {

double magnetization_bracket(const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    const double M = p.mass, w0 = p.omega0, wc = p.omega_c, th = p.theta;
    const double Om2 = d.Omega * d.Omega;
    return wc / (w0 * w0) - M * th / (4.0 * w0 * w0) * (2.0 * wc * wc + Om2) +
           2.0 * wc / (w0 * w0) * std::pow(0.25 * M * d.Omega * th, 2);
}

double susceptibility_bracket(const PhysParams& p) {
    const DeformedQuantities d = derive(p);
    const double M = p.mass, w0 = p.omega0, wc = p.omega_c, th = p.theta;
    return 1.0 - 1.5 * M * th * wc - std::pow(M * th * w0, 2) +
           6.0 * std::pow(0.25 * M * d.Omega * th, 2);
}

} // namespace

double magnetic_moment_closed(const ThermoInput& t) {
    t.validate();
    const DeformedQuantities d = derive(t.p);
    const double bracket = magnetization_bracket(t.p);
    const double Mc = t.p.mass * t.p.c_light;
    const double field_term = t.p.E1 * d.x0 + t.p.E2 * d.y0;
    return t.p.e_charge * t.mu / Mc * bracket +
           t.p.e_charge * t.p.e_charge / (2.0 * Mc) * field_term * bracket;
}

double susceptibility_closed(const ThermoInput& t) {
    t.validate();
    const DeformedQuantities d = derive(t.p);
    const double bracket = susceptibility_bracket(t.p);
    const double Mcw0 = t.p.mass * t.p.c_light * t.p.omega0;
    const double field_term = t.p.E1 * d.x0 + t.p.E2 * d.y0;
    return std::pow(t.p.e_charge / Mcw0, 2) * t.mu * bracket +
           std::pow(t.p.e_charge, 3) / (2.0 * Mcw0 * Mcw0) * field_term * bracket;
}

double OscHelpers::sinh_k_Omega(int k) const {
    return std::sinh(2.0 * M_PI * M_PI * k / (beta * hbar * Omega_tilde));
}
double OscHelpers::sinh_l_sigma(int l, int sigma) const {
    const double om = sigma > 0 ? Omega_plus : Omega_minus;
    return std::sinh(2.0 * M_PI * M_PI * l / (beta * hbar * om));
}
double OscHelpers::cosh_k_Omega(int k) const {
    return std::cosh(2.0 * M_PI * M_PI * k / (beta * hbar * Omega_tilde));
}
double OscHelpers::cosh_l_sigma(int l, int sigma) const {
    const double om = sigma > 0 ? Omega_plus : Omega_minus;
    return std::cosh(2.0 * M_PI * M_PI * l / (beta * hbar * om));
}

OscHelpers osc_helpers(const ThermoInput& t) {
    t.validate();
    const DeformedQuantities d = derive(t.p);
    OscHelpers h{};
    h.Theta_shift = theta_shift(t.p);
    h.B_theta = b_theta(t.p);
    h.pi_Omega = M_PI / (t.p.hbar * d.Omega_tilde);
    h.pi_Omega_plus = M_PI / (t.p.hbar * d.Omega_plus);
    h.pi_Omega_minus = M_PI / (t.p.hbar * d.Omega_minus);
    h.I_factor = i_factor(t.p);
    h.K_factor = k_factor(t.p);
    h.L_factor = l_factor(t.p);
    h.beta = t.beta;
    h.hbar = t.p.hbar;
    h.Omega_tilde = d.Omega_tilde;
    h.Omega_plus = d.Omega_plus;
    h.Omega_minus = d.Omega_minus;
    return h;
}

namespace {

// sin(x K)/K with the K -> 0 limit handled
double sinc_ratio(double x, double K) {
    if (std::abs(x * K) < 1e-6) {
        const double xk = x * K;
        return x * (1.0 - xk * xk / 6.0);
    }
    return std::sin(x * K) / K;
}

} // namespace

GammaBreakdown poisson_decomposition(const ThermoInput& t, int k_cut, int l_cut, double tol) {
    t.validate();
    if (k_cut < 8 || l_cut < 8)
        throw DomainError("poisson_decomposition: k_cut and l_cut must be >= 8");
    const DeformedQuantities d = derive(t.p);
    const ControlParams c = control_params(t);
    const OscHelpers h = osc_helpers(t);
    const double hb = t.p.hbar, w0 = t.p.omega0;
    const double mu = c.mu_eE;

    GammaBreakdown out{};
    out.k_cut = k_cut;
    out.l_cut = l_cut;
    out.mu_gg_T = t.beta * mu > 10.0;

    // smooth part: 1D reduction of the planar log integral plus the
    // constant Euler-Maclaurin correction
    const double bm = t.beta * mu;
    const double integral = adaptive_simpson(
        [bm](double s) { return s * softplus(bm - s); }, 0.0, std::max(bm, 0.0) + 60.0,
        1e-12 * std::max(1.0, bm * bm * bm));
    out.gamma0 = -integral / (t.beta * std::pow(t.beta * hb * w0, 2)) + mu / 12.0;

    out.gammaL = mu / 24.0 * std::pow((t.p.omega_c - h.Theta_shift) / w0, 2);

    // oscillatory part
    double osc = 0.0;
    double worst_suppression = 0.0;
    const double inv2pb = 1.0 / (2.0 * M_PI * t.beta);
    for (int k = 1; k <= k_cut; ++k) {
        const double sh = h.sinh_k_Omega(k);
        const double coef = std::pow(d.Omega_tilde / w0, 2) / (k * k) - M_PI * M_PI / 3.0;
        osc += inv2pb * ((k % 2 == 0) ? 1.0 : -1.0) * coef *
               std::sin(2.0 * h.pi_Omega * k * mu) / sh;
    }
    worst_suppression = std::max(worst_suppression,
                                 std::pow(d.Omega_tilde / w0, 2) / h.sinh_k_Omega(k_cut + 1));

    for (int sigma : {+1, -1}) {
        const double om = sigma > 0 ? d.Omega_plus : d.Omega_minus;
        const double pi_om = M_PI / (hb * om);
        for (int l = 1; l <= l_cut; ++l) {
            const double sh = h.sinh_l_sigma(l, sigma);
            osc += inv2pb * (om / d.Omega_tilde) / (l * l) * std::sin(2.0 * pi_om * l * mu) / sh;
        }
        worst_suppression =
            std::max(worst_suppression, (om / d.Omega_tilde) / h.sinh_l_sigma(l_cut + 1, sigma));

        for (int k = 1; k <= k_cut; ++k) {
            const double sk = (k % 2 == 0) ? 1.0 : -1.0;
            for (int l = 1; l <= l_cut; ++l) {
                const double sh = h.sinh_l_sigma(l, sigma);
                const double Km = k - d.Omega_tilde / om * l;
                const double Kp = k + d.Omega_tilde / om * l;
                const double x = h.pi_Omega * mu;
                const double term =
                    sinc_ratio(x, Km) * std::cos(x * Kp) + sinc_ratio(x, Kp) * std::cos(x * Km);
                osc += sk / (M_PI * t.beta * l) * term / sh;
            }
        }
        worst_suppression =
            std::max(worst_suppression, 2.0 / h.sinh_l_sigma(l_cut + 1, sigma));
    }
    out.gammaOsc = osc;
    out.osc_tail_bound = worst_suppression / (M_PI * t.beta);
    if (worst_suppression > 1e-14)
        throw ConvergenceError("poisson_decomposition: sinh suppression not reached at cutoff");

    const GammaResult gp = gamma_exact(t, tol, SpectrumBasis::polar);
    const GammaResult gh = gamma_exact(t, tol, SpectrumBasis::helicity);
    out.gamma_exact_polar = gp.value;
    out.gamma_exact_helicity = gh.value;
    out.exact_tail_bound = gp.tail_bound + gh.tail_bound;
    const auto [lo, hi] = berezin_lieb_bounds(t);
    out.gamma_lower = lo;
    out.gamma_upper = hi;
    const double total = out.gamma0 + out.gammaL + out.gammaOsc;
    out.residual_polar = total - gp.value;
    out.residual_helicity = total - gh.value;
    return out;
}

double magnetic_moment_numeric(const ThermoInput& t, double h_B, SpectrumBasis basis,
                               double gamma_tol) {
    t.validate();
    if (!(h_B > 0.0)) throw StepError("magnetic_moment_numeric: step must be positive");
    const auto gamma_at = [&](double db) {
        ThermoInput shifted = t;
        shifted.p = t.p.with_b_shift(db);
        return gamma_exact(shifted, gamma_tol, basis).value;
    };
    const auto central = [&](double h) {
        return (gamma_at(h) - gamma_at(-h)) / (2.0 * h);
    };
    const double d1 = central(h_B);
    const double d2 = central(0.5 * h_B);
    const double richardson = (4.0 * d2 - d1) / 3.0;
    const double disagreement =
        std::abs(richardson - d2) / std::max(std::abs(richardson), 1e-300);
    if (disagreement > 1e-4)
        throw StepError("magnetic_moment_numeric: extrapolation disagreement exceeds 1e-4");
    return -richardson;
}

} // namespace nclandau
