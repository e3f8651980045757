#ifndef NCLANDAU_VCS_HPP
#define NCLANDAU_VCS_HPP

#include "nclandau/params.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace nclandau {

/// Diagonal-matrix vector coherent state label: two diagonal 4x4 matrices,
/// an evolution parameter, a vector index j in 0..3 and fixed Fock indices.
struct DiagLabel {
    std::array<std::complex<double>, 4> z{};  ///< diag entries of the first matrix
    std::array<std::complex<double>, 4> w{};  ///< diag entries of the second
    double tau = 0.0;
    int j = 0;
    int n_tilde = 0;
    int m_tilde = 0;
};

/// Quaternion label: modulus/angle sets for both quaternionic matrices.
/// Angle ranges: phi, varphi in [0, pi]; the others in [0, 2 pi).
struct QuaternionLabel {
    double r = 0.0;
    double vartheta = 0.0;
    double phi = 0.0;
    double eta = 0.0;
    double rho = 0.0;
    double gamma = 0.0;
    double varphi = 0.0;
    double varrho = 0.0;
};

/// Normalization constant: sum_j exp(2(|z_j|^2 + |w_j|^2)).
double mvcs_normalization(const DiagLabel& label);

/// One family member on the truncated space: scalar coefficients over the
/// running two-mode indices (n, m) at fixed (j, n_tilde, m_tilde).
struct MvcsState {
    Eigen::MatrixXcd coeff;  ///< coeff(n, m), truncation n, m < n_trunc
    int j = 0;
    int n_tilde = 0;
    int m_tilde = 0;
};
MvcsState mvcs_state(const DiagLabel& label, const PhysParams& p, int n_trunc);

/// Family norm: sum over j, n_tilde <= cut, m_tilde <= cut of member norms,
/// divided by nothing (the normalization is already inside the coefficients).
/// Converges to 1 as the cuts grow.
double mvcs_family_norm(const DiagLabel& label, const PhysParams& p, int n_trunc,
                        int family_cut);

/// Family-summed expectation of the dimensionless Hamiltonian, next to the
/// closed form (weighted moduli) it must reproduce.
struct MvcsActionIdentity {
    double family_expectation;
    double closed_form;  ///< ((O+/O)|Z|^2_w + (O-/O)|W|^2_w + 1)/2, weighted moduli
};
MvcsActionIdentity mvcs_action_identity(const DiagLabel& label, const PhysParams& p,
                                        int n_trunc, int family_cut);

/// Moment integral int_0^inf 2 e^{-r^2} r^{2n+1} dr of the resolution weight,
/// via Gauss-Laguerre; equals n! exactly.
double moment_weight_integral(int n, int order = 0);
/// Relative deviation from n!.
double moment_weight_check(int n, int order = 0);

/// Quaternion 4x4 representations built two ways.
struct QuaternionPair {
    Eigen::Matrix4cd q;  ///< r (I cos(vartheta) + i Theta(n) sin(vartheta))
    Eigen::Matrix4cd Q;  ///< rho (I cos(gamma) + i Theta(k) sin(gamma))
};
QuaternionPair quaternion_build(const QuaternionLabel& label);

/// Same first quaternion through SU(2) conjugation of diag(z, zbar, z, zbar).
/// Equality with quaternion_build holds for z = r e^{i vartheta} and internal
/// SU(2) phases eta + pi/2 under the sigma conventions used here.
Eigen::Matrix4cd quaternion_from_su2(double r, double vartheta, double phi, double eta);

/// QVCS family member: 4-vector coefficients over the running (n, m) grid.
struct QvcsState {
    std::vector<Eigen::Vector4cd> coeff;  ///< index n * n_trunc + m
    int n_trunc = 0;
    int j = 0;
    int n_tilde = 0;
    int m_tilde = 0;

    const Eigen::Vector4cd& at(int n, int m) const { return coeff[n * n_trunc + m]; }
};
QvcsState qvcs_state(const QuaternionLabel& label, double tau, int j, int n_tilde,
                     int m_tilde, const PhysParams& p, int n_trunc);

double qvcs_normalization(const QuaternionLabel& label);  ///< 4 e^{2(r^2+rho^2)}
double qvcs_family_norm(const QuaternionLabel& label, const PhysParams& p, int n_trunc,
                        int family_cut);

/// Moment problem of the quaternionic weight:
/// int int (4 pi^2 W / N) r^{2n} rho^{2m} / (n! m!) r dr rho drho = 1.
double qvcs_moment_check(int n, int m, int order = 0);

/// Displaced-vacuum reconstruction of the QVCS against the direct expansion.
struct DisplacementReport {
    double deviation;           ///< displaced (ladder-consistent form) vs direct
    double deviation_conjugated;  ///< generator with the matrix slots conjugated
    double factorization_gap;   ///< normal-ordered product vs direct exponential
};
DisplacementReport displacement_check(const QuaternionLabel& label, const PhysParams& p,
                                      int n_trunc);

/// Closed-form QVCS statistics. Every moment these forms capture exactly
/// depends on the de Moivre angle vartheta, not on the axis phase eta; the
/// brute-force family sums fix that identification, and also the sign of
/// <P_X>, which alternates with the parity of the vector index j.
struct QvcsClosedForms {
    double mean_px, mean_py;
    double mean_px2, mean_py2;
    double var_px, var_py, var_x, var_y;
    double product_xy2, product_xpx2, product_ypy2, product_pxpy2;
    double big_f;
};
QvcsClosedForms qvcs_closed_forms(const QuaternionLabel& label, int j, double theta,
                                  double hbar);

/// Brute-force family-summed expectation values on the truncated grid.
struct QvcsStatistics {
    double family_norm;   ///< converges to 1/4 per vector index
    double mean_x, mean_y, mean_px, mean_py;
    double mean_x2, mean_y2, mean_px2, mean_py2;
    double var_x, var_y, var_px, var_py;
    double product_xy2, product_xpx2, product_ypy2, product_pxpy2;
    double comm_x_px_abs;  ///< |<[X, P_X]>|, family-weighted
};
QvcsStatistics qvcs_statistics(const QuaternionLabel& label, int j, double theta,
                               double hbar, int n_trunc, int family_cut);

/// Side-by-side closed form vs oracle with signed discrepancies.
struct QvcsComparisonRow {
    const char* name;
    double closed;
    double oracle;
    double discrepancy;  ///< closed - oracle
};
std::vector<QvcsComparisonRow> qvcs_compare(const QuaternionLabel& label, int j,
                                            double theta, double hbar, int n_trunc,
                                            int family_cut);

} // namespace nclandau

#endif
