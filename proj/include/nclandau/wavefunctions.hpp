#ifndef NCLANDAU_WAVEFUNCTIONS_HPP
#define NCLANDAU_WAVEFUNCTIONS_HPP

#include "nclandau/params.hpp"

#include <complex>

namespace nclandau {

/// Polar quantum numbers: principal n >= 0, angular momentum rho (any sign).
struct PolarLevel {
    int n = 0;
    int rho = 0;
};

/// Generalized Laguerre polynomial L^{(alpha)}_n(x) by the explicit
/// binomial sum. Terms are carried in compensated double-double arithmetic:
/// the sum is ill-conditioned (alternating terms up to ~1e12 times the
/// result on the supported grid) and plain doubles cannot hold 1e-12.
double laguerre_sum(int n, int alpha, double x);

/// Same polynomial by the three-term recurrence (the production path).
double laguerre_recurrence(int n, int alpha, double x);

/// Production evaluation (recurrence).
inline double laguerre(int n, int alpha, double x) { return laguerre_recurrence(n, alpha, x); }

/// Polar-coordinate eigenfunction at (r, phi). The factorial ratio is taken
/// in log space; the angular factor is e^{i rho phi} on [0, 2 pi).
std::complex<double> psi(const PolarLevel& level, double r, double phi, const PhysParams& p);

/// Polar-basis energy:
/// hbar Omega_tilde (n + (|rho|+1)/2) + (hbar omega_c_tilde/2) rho + k_eE.
double energy_polar(const PolarLevel& level, const PhysParams& p);

/// Helicity-basis energy of the level reached through the natural index map
/// n_pm = n + (|rho| +- rho)/2. Does not coincide with energy_polar; see
/// spectrum_comparison.
double energy_helicity_mapped(const PolarLevel& level, const PhysParams& p);

/// |<psi_1 | psi_2> - delta_12| via Gauss-Laguerre radial quadrature; the
/// angular integral is exact (rho selection). Throws QuadratureError if the
/// requested order is unavailable.
double orthonormality_deviation(const PolarLevel& l1, const PolarLevel& l2,
                                const PhysParams& p, int order = 0);

/// Side-by-side polar vs mapped-helicity spectrum. The two bases disagree by
/// a factor two in the level spacing (plus a zero-point shift); the report
/// quantifies it and nothing is asserted about their equality.
struct SpectrumComparisonRow {
    int n;
    int rho;
    double energy_polar;
    double energy_helicity;
    double ratio_shifted;  ///< (E_polar - k_eE) / (E_helicity - k_eE)
};
std::vector<SpectrumComparisonRow> spectrum_comparison(const PhysParams& p, int n_max,
                                                       int rho_max);

} // namespace nclandau

#endif
