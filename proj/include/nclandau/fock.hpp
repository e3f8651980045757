#ifndef NCLANDAU_FOCK_HPP
#define NCLANDAU_FOCK_HPP

#include "nclandau/params.hpp"

#include <Eigen/Dense>

namespace nclandau {

/// Truncated two-mode matrix representation of the helicity ladder algebra.
///
/// States are ordered row-major: linear index = n_plus * n_trunc + n_minus.
/// The operator-valued basis elements of the quantum Hilbert space are
/// represented as a plain two-mode tensor; all computed quantities agree
/// under this identification.
struct FockRep {
    int n_trunc = 0;
    PhysParams params;
    DeformedQuantities dq;
    Eigen::MatrixXcd b_plus;
    Eigen::MatrixXcd b_plus_dag;
    Eigen::MatrixXcd b_minus;
    Eigen::MatrixXcd b_minus_dag;
    Eigen::MatrixXcd h_q;       ///< diagonal, built from the closed-form spectrum
    Eigen::MatrixXd e_levels;   ///< e_levels(n_plus, n_minus)

    int dim() const { return n_trunc * n_trunc; }
    int index(int n_plus, int n_minus) const { return n_plus * n_trunc + n_minus; }

    double energy(int n_plus, int n_minus) const;
};

/// Builds the truncated representation. Throws TruncationError if n_trunc < 2.
FockRep build_fock(const PhysParams& p, int n_trunc);

/// Assembles the Hamiltonian from the ladder matrices,
/// (hbar/2)(Omega_plus Bp+Bp + Omega_minus Bm+Bm + Omega_tilde) + k_eE.
/// Must agree with the diagonal closed-form h_q; this is the representation test.
Eigen::MatrixXcd hamiltonian_from_ladders(const FockRep& rep);

/// Dimensionless shifted spectrum, (E - k_eE) / (hbar Omega_tilde).
/// Entry (n, m) = ((Omega_plus/Omega_tilde) n + (Omega_minus/Omega_tilde) m + 1) / 2.
Eigen::MatrixXd dimensionless_spectrum(const FockRep& rep);

/// Mutually adjoint permutation unitaries between the plain (n, m) ordering
/// and the helicity ordering. The pairing is the identity relabeling, made
/// explicit so the ordering contract is testable.
struct PassagePair {
    Eigen::MatrixXd u_map;
    Eigen::MatrixXd v_map;
};
PassagePair passage(int n_trunc);

/// Truncation-defect report for the canonical commutators.
struct CommutatorDefect {
    double low_level_max;   ///< max |[B,B+] - 1| over levels below the top one
    double corner_plus;     ///< top-level defect of the plus mode, expected 1 - n_trunc
    double corner_minus;
    double cross_mode_max;  ///< max over |[B+,B-]|, |[B+,B-^dag]| entries
};
CommutatorDefect commutator_defect(const FockRep& rep);

} // namespace nclandau

#endif
