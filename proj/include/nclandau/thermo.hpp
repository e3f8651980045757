#ifndef NCLANDAU_THERMO_HPP
#define NCLANDAU_THERMO_HPP

#include "nclandau/params.hpp"

#include <utility>

namespace nclandau {

/// Grand-canonical input: inverse temperature, chemical potential, physics.
struct ThermoInput {
    double beta = 1.0;
    double mu = 0.0;
    PhysParams p;

    void validate() const;
};

/// Which single-particle spectrum the grand potential sums over.
///
/// The two bases disagree by a factor two in level spacing (see
/// wavefunctions::spectrum_comparison). The sandwich bounds are saturated by
/// the helicity spectrum, which the coherent-state symbols quantize; the
/// smooth/oscillatory decomposition and the magnetization closed forms belong
/// to the polar spectrum. Operations default to the basis their closed forms
/// are consistent with, and the comparison is part of the discrepancy report.
enum class SpectrumBasis { helicity, polar };

/// Riemann-Fermi-Dirac function F_s(z) = sum_{n>=1} z^n / n^s for |z| <= 1,
/// summed with compensated accumulation to absolute tail < 1e-14.
/// z = 1 requires s >= 2 (Euler-Maclaurin tail). Throws DomainError for |z| > 1.
double fermi_dirac_F(int s, double z);

/// Control parameters kappa' = exp(beta(mu_eE +- hbar Omega_tilde / 2)).
struct ControlParams {
    double mu_eE;               ///< mu + (e/2)(E1 x0 + E2 y0)
    double kappa_prime_plus;
    double kappa_prime_minus;
    double kappa_plus;          ///< exp(beta(mu +- hbar Omega_tilde/2))
    double kappa_minus;
    double log_kappa_prime_plus;   ///< overflow-safe logs, used internally
    double log_kappa_prime_minus;
};
ControlParams control_params(const ThermoInput& t);

/// Grand potential with truncation certificate.
struct GammaResult {
    double value = 0.0;
    long terms = 0;         ///< lattice points actually summed
    double tail_bound = 0.0;///< certified bound on the dropped tail
};

/// -(1/beta) sum log(1 + e^{-beta(E - mu)}) over the chosen spectrum, with
/// cutoffs certified through log(1+x) <= x geometric tail bounds (< tol).
/// Throws DivergenceError if the spectrum is unbounded below in rho.
GammaResult gamma_exact(const ThermoInput& t, double tol = 1e-10,
                        SpectrumBasis basis = SpectrumBasis::helicity);

/// Two-branch closed form of the bound integral phi(kappa').
double phi_closed(double kappa_prime, const ThermoInput& t);
/// Overflow-safe variant taking log(kappa') directly.
double phi_closed_log(double log_kappa_prime, const ThermoInput& t);
/// Independent adaptive-quadrature evaluation of the defining integral.
double phi_quadrature(double kappa_prime, const ThermoInput& t, double tol = 1e-12);

/// (phi(kappa'_plus), phi(kappa'_minus)); lower <= upper always.
std::pair<double, double> berezin_lieb_bounds(const ThermoInput& t);

/// Low-temperature expansion pieces of phi and derived quantities.
struct LowTempSuite {
    double A;
    double delta_half;
    double S0;
    double ratio;             ///< Delta / |A + S0|, assembled from the pieces
    double gamma_approx;      ///< A + S0
    double n_electrons;       ///< -d(A + S0)/dmu closed form
    double n_electrons_leading;  ///< 2 (mu_eE / hbar omega0)^2
    bool valid_mu_gg_gap;     ///< mu_eE >> hbar Omega_tilde / 2
    bool valid_mu_gg_T;       ///< mu_eE >> 1 / beta
};
LowTempSuite low_temp_suite(const ThermoInput& t);

/// Smooth-part magnetization closed form (mu held fixed), including the
/// electric-field second term.
double magnetic_moment_closed(const ThermoInput& t);
/// Susceptibility closed form, the B-derivative of the magnetization.
double susceptibility_closed(const ThermoInput& t);

/// Scalar ingredients of the oscillatory sums.
struct OscHelpers {
    double Theta_shift;    ///< theta_shift(p)
    double B_theta;        ///< b_theta(p)
    double pi_Omega;       ///< pi / (hbar Omega_tilde)
    double pi_Omega_plus;  ///< pi / (hbar Omega_plus)
    double pi_Omega_minus;
    double I_factor;
    double K_factor;
    double L_factor;
    double sinh_k_Omega(int k) const;      ///< sinh(2 pi^2 k / (beta hbar Omega_tilde))
    double sinh_l_sigma(int l, int sigma) const;
    double cosh_k_Omega(int k) const;
    double cosh_l_sigma(int l, int sigma) const;
    double beta, hbar, Omega_tilde, Omega_plus, Omega_minus;
};
OscHelpers osc_helpers(const ThermoInput& t);

/// Grand potential decomposition: smooth part, field-correction part, and
/// oscillatory part, next to the exact sums and the sandwich bounds.
struct GammaBreakdown {
    double gamma_exact_polar;
    double gamma_exact_helicity;
    double gamma_lower;     ///< phi(kappa'_plus)
    double gamma_upper;     ///< phi(kappa'_minus)
    double gamma0;
    double gammaL;
    double gammaOsc;
    double residual_polar;      ///< gamma0+gammaL+gammaOsc - gamma_exact_polar
    double residual_helicity;
    int k_cut, l_cut;
    double osc_tail_bound;
    double exact_tail_bound;
    bool mu_gg_T;           ///< validity flag of the decomposition
};
GammaBreakdown poisson_decomposition(const ThermoInput& t, int k_cut = 40, int l_cut = 40,
                                     double tol = 1e-10);

/// Central-difference magnetization -dGamma/dB at fixed mu, Richardson
/// extrapolated over steps h_B and h_B/2. Throws StepError when the two
/// estimates disagree beyond 1e-4 relative.
double magnetic_moment_numeric(const ThermoInput& t, double h_B,
                               SpectrumBasis basis = SpectrumBasis::polar,
                               double gamma_tol = 1e-12);

} // namespace nclandau

#endif
