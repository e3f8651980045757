#include "nclandau/fock.hpp"
#include "nclandau/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace nclandau {

namespace {

Eigen::MatrixXcd single_mode_lowering(int n) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

} // namespace

double FockRep::energy(int n_plus, int n_minus) const {
    return 0.5 * params.hbar *
               (dq.Omega_plus * n_plus + dq.Omega_minus * n_minus + dq.Omega_tilde) +
           dq.k_eE;
}

FockRep build_fock(const PhysParams& p, int n_trunc) {
    if (n_trunc < 2) throw TruncationError("build_fock: n_trunc must be >= 2");
    FockRep rep;
    rep.n_trunc = n_trunc;
    rep.params = p;
    rep.dq = derive(p);

    const Eigen::MatrixXcd a = single_mode_lowering(n_trunc);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_trunc, n_trunc);
    rep.b_plus = Eigen::kroneckerProduct(a, id);
    rep.b_minus = Eigen::kroneckerProduct(id, a);
    rep.b_plus_dag = rep.b_plus.adjoint();
    rep.b_minus_dag = rep.b_minus.adjoint();

    rep.e_levels.resize(n_trunc, n_trunc);
    rep.h_q = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    for (int np = 0; np < n_trunc; ++np)
        for (int nm = 0; nm < n_trunc; ++nm) {
            const double e = rep.energy(np, nm);
            rep.e_levels(np, nm) = e;
            rep.h_q(rep.index(np, nm), rep.index(np, nm)) = e;
        }
    return rep;
}

Eigen::MatrixXcd hamiltonian_from_ladders(const FockRep& rep) {
    const auto& d = rep.dq;
    const double hb = rep.params.hbar;
    const Eigen::Index n = rep.dim();
    return 0.5 * hb *
               (d.Omega_plus * (rep.b_plus_dag * rep.b_plus) +
                d.Omega_minus * (rep.b_minus_dag * rep.b_minus) +
                d.Omega_tilde * Eigen::MatrixXcd::Identity(n, n)) +
           d.k_eE * Eigen::MatrixXcd::Identity(n, n);
}

Eigen::MatrixXd dimensionless_spectrum(const FockRep& rep) {
    const auto& d = rep.dq;
    Eigen::MatrixXd table(rep.n_trunc, rep.n_trunc);
    for (int n = 0; n < rep.n_trunc; ++n)
        for (int m = 0; m < rep.n_trunc; ++m)
            table(n, m) = 0.5 * (d.Omega_plus / d.Omega_tilde * n +
                                 d.Omega_minus / d.Omega_tilde * m + 1.0);
    return table;
}

PassagePair passage(int n_trunc) {
    if (n_trunc < 1) throw TruncationError("passage: n_trunc must be >= 1");
    const int dim = n_trunc * n_trunc;
    PassagePair pair;
    pair.u_map = Eigen::MatrixXd::Zero(dim, dim);
    // (n, m) -> (n_plus, n_minus) is the identity pairing; both enumerations
    // are row-major, so the permutation matrix is assembled index by index.
    for (int n = 0; n < n_trunc; ++n)
        for (int m = 0; m < n_trunc; ++m) {
            const int from = n * n_trunc + m;
            const int to = n * n_trunc + m;
            pair.u_map(to, from) = 1.0;
        }
    pair.v_map = pair.u_map.transpose();
    return pair;
}

CommutatorDefect commutator_defect(const FockRep& rep) {
    const Eigen::Index dim = rep.dim();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd cp = rep.b_plus * rep.b_plus_dag - rep.b_plus_dag * rep.b_plus - id;
    const Eigen::MatrixXcd cm = rep.b_minus * rep.b_minus_dag - rep.b_minus_dag * rep.b_minus - id;

    CommutatorDefect defect{};
    const int t = rep.n_trunc;
    double low = 0.0;
    for (int np = 0; np < t; ++np)
        for (int nm = 0; nm < t; ++nm) {
            const int i = rep.index(np, nm);
            if (np < t - 1) low = std::max(low, std::abs(cp(i, i)));
            if (nm < t - 1) low = std::max(low, std::abs(cm(i, i)));
        }
    defect.low_level_max = low;
    // the defect [B, B+] - 1 at a top level equals -n_trunc; adding back the
    // identity gives the commutator corner entry 1 - n_trunc
    defect.corner_plus = (cp(rep.index(t - 1, 0), rep.index(t - 1, 0)) + 1.0).real();
    defect.corner_minus = (cm(rep.index(0, t - 1), rep.index(0, t - 1)) + 1.0).real();

    const double c1 = (rep.b_plus * rep.b_minus - rep.b_minus * rep.b_plus).cwiseAbs().maxCoeff();
    const double c2 =
        (rep.b_plus * rep.b_minus_dag - rep.b_minus_dag * rep.b_plus).cwiseAbs().maxCoeff();
    defect.cross_mode_max = std::max(c1, c2);
    return defect;
}

} // namespace nclandau
