#ifndef NCLANDAU_PARAMS_HPP
#define NCLANDAU_PARAMS_HPP

#include <Eigen/Dense>

#include <array>

namespace nclandau {

/// Raw physical inputs. Units follow the hbar = e = c = 1 convention by
/// default; the magnetic field is never stored, it is always reconstructed
/// as B = M c omega_c / e so that derivatives in B have a single source.
struct PhysParams {
    double mass = 1.0;      ///< M > 0
    double omega0 = 1.0;    ///< confining frequency > 0
    double omega_c = 0.0;   ///< cyclotron frequency >= 0
    double theta = 0.0;     ///< noncommutativity parameter >= 0 (area units)
    double hbar = 1.0;
    double e_charge = 1.0;
    double c_light = 1.0;
    double E1 = 0.0;        ///< electric field components
    double E2 = 0.0;

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    double b_field() const { return mass * c_light * omega_c / e_charge; }

    /// Returns a copy with omega_c adjusted so that B changes by db.
    PhysParams with_b_shift(double db) const;
};

/// Every theta-dependent derived scalar.
///
/// Omega_tilde and omega_c_tilde are the canonical forms used by the
/// Hamiltonian; lambda_plus/minus are the analytic eigenvalue magnitudes of
/// the commutator matrix (hbar-carrying variants of the same radicand).
/// lambda_variant_plus/minus keep the alternative whose radicand carries
/// M*Omega*theta/(2 hbar) instead of /(4 hbar); it does not reproduce the
/// commutator-matrix spectrum and is retained only for the discrepancy
/// report. No reconciliation between the two is guessed.
struct DeformedQuantities {
    double Omega;          ///< sqrt(4 omega0^2 + omega_c^2)
    double radicand;       ///< 1 - (M omega_c/2) theta + (M Omega theta/4)^2
    double Omega_tilde;    ///< Omega * sqrt(radicand)
    double omega_c_tilde;  ///< omega_c - M theta Omega^2 / 4
    double Omega_plus;     ///< (Omega_tilde + omega_c_tilde)/2
    double Omega_minus;    ///< (Omega_tilde - omega_c_tilde)/2
    double mu_theta;       ///< radicand^{1/4}
    double zeta;           ///< sqrt(M Omega / hbar) / mu_theta
    double xi;             ///< (M Omega / 2 hbar) / mu_theta^2
    double kappa_plus;     ///< eigenvector normalisation scalars
    double kappa_minus;
    double lambda_plus;    ///< M hbar (Omega sqrt(radicand_h) + omega_c_tilde_h)
    double lambda_minus;
    double lambda_variant_plus;   ///< 2-hbar radicand variant (reported only)
    double lambda_variant_minus;
    double B_hbar;         ///< 2 hbar M omega0 (1 - M omega_c theta / (2 hbar))
    double x0;             ///< e E1 / (M omega0^2)
    double y0;             ///< e E2 / (M omega0^2)
    double k_eE;           ///< -(e/2)(E1 x0 + E2 y0)
};

/// Computes every deformed scalar. Throws DomainError when the radicand is
/// not positive or omega_c_tilde < 0 (outside the declared validity region).
DeformedQuantities derive(const PhysParams& p);

/// The 4x4 commutator matrix of the shifted phase-space operators.
/// Hermitian; its spectrum is {+-lambda_plus, +-lambda_minus}.
Eigen::Matrix4cd g_matrix(const PhysParams& p);

/// Sorted descending eigenvalues of g_matrix via dense eigendecomposition.
Eigen::Vector4d g_matrix_eigenvalues(const PhysParams& p);

// Scalar helpers entering the oscillatory decomposition and the
// magnetization; all reduce to simple commutative forms at theta = 0.
double theta_shift(const PhysParams& p);      ///< M omega_c^2 theta/4 + M omega0^2 theta
double b_theta(const PhysParams& p);          ///< (e theta/2c)(e B theta/(4c) - 1)
double i_factor(const PhysParams& p);         ///< (e/Mc)(1 - e B theta/(2c))
double k_factor(const PhysParams& p);         ///< cyclotron-weighted derivative factor
double l_factor(const PhysParams& p);         ///< (e Omega_tilde / 2Mc)(1 - e B theta/(2c))

/// One row of the theta = 0 reduction check.
struct ThetaZeroEntry {
    const char* name;
    double value;     ///< evaluated at theta = 0
    double expected;  ///< commutative closed form
};

/// Evaluates the theta = 0 reductions of the deformed quantities and the
/// scalar helpers against their commutative closed forms.
std::array<ThetaZeroEntry, 7> theta_zero_report(const PhysParams& p);

/// Relative spread between the analytic eigenvalues of g_matrix and the
/// 2-hbar-radicand variant, reported rather than resolved.
struct LambdaVariantReport {
    double lambda_plus;
    double lambda_minus;
    double lambda_variant_plus;
    double lambda_variant_minus;
    double rel_gap_plus;
    double rel_gap_minus;
};
LambdaVariantReport lambda_variant_report(const PhysParams& p);

} // namespace nclandau

#endif
