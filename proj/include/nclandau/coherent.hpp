#ifndef NCLANDAU_COHERENT_HPP
#define NCLANDAU_COHERENT_HPP

#include "nclandau/fock.hpp"

#include <complex>

namespace nclandau {

/// Canonical two-mode coherent-state label with evolution parameter tau.
struct CSLabel {
    std::complex<double> z_plus{0.0, 0.0};
    std::complex<double> z_minus{0.0, 0.0};
    double tau = 0.0;
};

/// Poisson tail mass bound (|z|^2 e / n)^n used as the truncation adequacy
/// certificate for coherent-type expansions.
double coherent_tail_bound(double abs_z, int n_trunc);

/// Normalized coherent state on the truncated representation. Coefficients
///   e^{-(|z+|^2+|z-|^2)/2} z+^{n+} conj(z-)^{n-} e^{-i tau E(n+,n-)} / sqrt(n+! n-!)
/// Throws TruncationError when the tail mass exceeds 1e-12.
Eigen::VectorXcd cs_vector(const CSLabel& label, const FockRep& rep);

/// Analytic expectation of the Hamiltonian in the state |z,tau):
/// (hbar/2)(Omega_plus |z+|^2 + Omega_minus |z-|^2 + Omega_tilde) + k_eE.
double lower_symbol_H(const CSLabel& label, const PhysParams& p);

/// Same expectation evaluated as <cs| H |cs> on the truncated matrices.
double lower_symbol_H_numeric(const CSLabel& label, const FockRep& rep);

/// Covariant symbol: lower_symbol - hbar * Omega_tilde.
double upper_symbol_H(const CSLabel& label, const PhysParams& p);

/// Max deviation of the coherent-state resolution of the identity projected
/// onto basis states with both indices <= n_max. Angular integrals select the
/// diagonal exactly; the radial moment integrals are done by Gauss-Laguerre.
double resolution_deviation(int n_max, int radial_order = 0);

/// Finite shadow of the derivative-kernel form of the identity: compares the
/// order-K two-sided derivative series between Gaussian-polynomial factors
/// with the Gaussian integral it resums, at the point z for indices (m, mp).
double voros_deviation(int order_k, int m, int mp, std::complex<double> z);

/// Order-k term of the derivative kernel between bare monomials; vanishes
/// for k > min(m, mp).
std::complex<double> voros_polynomial_term(int k, int m, int mp, std::complex<double> z);

} // namespace nclandau

#endif
