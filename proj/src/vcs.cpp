#include "nclandau/vcs.hpp"
#include "nclandau/coherent.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/quadrature.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace nclandau {

namespace {

Eigen::Matrix2cd pauli_axis(double phi, double eta) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd s;
    s << std::cos(phi), std::exp(i * eta) * std::sin(phi),
         std::exp(-i * eta) * std::sin(phi), -std::cos(phi);
    return s;
}

Eigen::Matrix4cd axis_block(double phi, double eta) {
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
    const Eigen::Matrix2cd s = pauli_axis(phi, eta);
    t.block<2, 2>(0, 0) = s;
    t.block<2, 2>(2, 2) = s;
    return t;
}

Eigen::Matrix4cd quaternion_matrix(double modulus, double angle, double phi, double eta) {
    const std::complex<double> i(0.0, 1.0);
    return modulus * (std::cos(angle) * Eigen::Matrix4cd::Identity() +
                      i * std::sin(angle) * axis_block(phi, eta));
}

double dimensionless_energy(const DeformedQuantities& d, int n, int m) {
    return 0.5 * (d.Omega_plus / d.Omega_tilde * n + d.Omega_minus / d.Omega_tilde * m + 1.0);
}

void check_label_ranges(const QuaternionLabel& q) {
    if (q.r < 0.0 || q.rho < 0.0) throw DomainError("quaternion label: moduli must be >= 0");
    if (q.phi < 0.0 || q.phi > M_PI || q.varphi < 0.0 || q.varphi > M_PI)
        throw DomainError("quaternion label: phi angles must lie in [0, pi]");
}

} // namespace

double mvcs_normalization(const DiagLabel& label) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
        acc += std::exp(2.0 * (std::norm(label.z[j]) + std::norm(label.w[j])));
    return acc;
}

MvcsState mvcs_state(const DiagLabel& label, const PhysParams& p, int n_trunc) {
    if (n_trunc < 2) throw TruncationError("mvcs_state: n_trunc must be >= 2");
    if (label.j < 0 || label.j > 3) throw DomainError("mvcs_state: j must be in 0..3");
    if (label.n_tilde < 0 || label.m_tilde < 0)
        throw DomainError("mvcs_state: fixed Fock indices must be >= 0");
    const DeformedQuantities d = derive(p);
    const std::complex<double> zj = label.z[label.j];
    const std::complex<double> wj = label.w[label.j];
    for (int j = 0; j < 4; ++j) {
        if (coherent_tail_bound(std::abs(label.z[j]), n_trunc) > 1e-12 ||
            coherent_tail_bound(std::abs(label.w[j]), n_trunc) > 1e-12)
            throw TruncationError("mvcs_state: truncation tail mass exceeds 1e-12");
    }

    // fixed-index factors zbar^nt / sqrt(nt!), wbar^mt / sqrt(mt!)
    std::complex<double> fixed = 1.0;
    for (int k = 1; k <= label.n_tilde; ++k) fixed *= std::conj(zj) / std::sqrt(double(k));
    for (int k = 1; k <= label.m_tilde; ++k) fixed *= std::conj(wj) / std::sqrt(double(k));
    fixed /= std::sqrt(mvcs_normalization(label));

    MvcsState st;
    st.j = label.j;
    st.n_tilde = label.n_tilde;
    st.m_tilde = label.m_tilde;
    st.coeff.resize(n_trunc, n_trunc);
    std::complex<double> zn = 1.0;
    for (int n = 0; n < n_trunc; ++n) {
        std::complex<double> wm = 1.0;
        for (int m = 0; m < n_trunc; ++m) {
            const double e = dimensionless_energy(d, n, m);
            st.coeff(n, m) = fixed * zn * wm * std::polar(1.0, -label.tau * e);
            wm *= wj / std::sqrt(double(m + 1));
        }
        zn *= zj / std::sqrt(double(n + 1));
    }
    return st;
}

double mvcs_family_norm(const DiagLabel& label, const PhysParams& p, int n_trunc,
                        int family_cut) {
    double acc = 0.0;
    DiagLabel member = label;
    for (int j = 0; j < 4; ++j) {
        member.j = j;
        for (int nt = 0; nt <= family_cut; ++nt)
            for (int mt = 0; mt <= family_cut; ++mt) {
                member.n_tilde = nt;
                member.m_tilde = mt;
                acc += mvcs_state(member, p, n_trunc).coeff.squaredNorm();
            }
    }
    return acc;
}

MvcsActionIdentity mvcs_action_identity(const DiagLabel& label, const PhysParams& p,
                                        int n_trunc, int family_cut) {
    const DeformedQuantities d = derive(p);
    double expectation = 0.0;
    DiagLabel member = label;
    for (int j = 0; j < 4; ++j) {
        member.j = j;
        for (int nt = 0; nt <= family_cut; ++nt)
            for (int mt = 0; mt <= family_cut; ++mt) {
                member.n_tilde = nt;
                member.m_tilde = mt;
                const MvcsState st = mvcs_state(member, p, n_trunc);
                for (int n = 0; n < n_trunc; ++n)
                    for (int m = 0; m < n_trunc; ++m)
                        expectation += dimensionless_energy(d, n, m) * std::norm(st.coeff(n, m));
            }
    }
    const double nfac = mvcs_normalization(label);
    double z2 = 0.0, w2 = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double w = std::exp(2.0 * (std::norm(label.z[j]) + std::norm(label.w[j]))) / nfac;
        z2 += std::norm(label.z[j]) * w;
        w2 += std::norm(label.w[j]) * w;
    }
    MvcsActionIdentity out{};
    out.family_expectation = expectation;
    out.closed_form = 0.5 * (d.Omega_plus / d.Omega_tilde * z2 +
                             d.Omega_minus / d.Omega_tilde * w2 + 1.0);
    return out;
}

double moment_weight_integral(int n, int order) {
    if (n < 0 || n > 40) throw DomainError("moment_weight_integral: n limited to 0..40");
    if (order <= 0) order = n + 12;
    if (order > 150) throw QuadratureError("moment_weight_integral: order exceeds table");
    const QuadratureRule rule = gauss_laguerre(order);
    // in u = r^2 the integral is int e^-u u^n du = n!
    return rule.integrate(
        [n](double u) { return std::exp(n * std::log(u)); });
}

double moment_weight_check(int n, int order) {
    const double nf = std::exp(std::lgamma(n + 1.0));
    return std::abs(moment_weight_integral(n, order) / nf - 1.0);
}

QuaternionPair quaternion_build(const QuaternionLabel& label) {
    check_label_ranges(label);
    QuaternionPair pair;
    pair.q = quaternion_matrix(label.r, label.vartheta, label.phi, label.eta);
    pair.Q = quaternion_matrix(label.rho, label.gamma, label.varphi, label.varrho);
    return pair;
}

Eigen::Matrix4cd quaternion_from_su2(double r, double vartheta, double phi, double eta) {
    const std::complex<double> i(0.0, 1.0);
    const double xi = eta + 0.5 * M_PI;
    Eigen::Matrix2cd u_xi = Eigen::Matrix2cd::Zero();
    u_xi(0, 0) = std::exp(i * (0.5 * xi));
    u_xi(1, 1) = std::exp(-i * (0.5 * xi));
    Eigen::Matrix2cd u_phi;
    u_phi << std::cos(0.5 * phi), i * std::sin(0.5 * phi),
             i * std::sin(0.5 * phi), std::cos(0.5 * phi);
    const Eigen::Matrix2cd u = u_xi * u_phi * u_xi;

    Eigen::Matrix2cd zdiag = Eigen::Matrix2cd::Zero();
    zdiag(0, 0) = std::polar(r, vartheta);
    zdiag(1, 1) = std::polar(r, -vartheta);
    const Eigen::Matrix2cd block = u * zdiag * u.adjoint();

    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    out.block<2, 2>(0, 0) = block;
    out.block<2, 2>(2, 2) = block;
    return out;
}

double qvcs_normalization(const QuaternionLabel& label) {
    return 4.0 * std::exp(2.0 * (label.r * label.r + label.rho * label.rho));
}

QvcsState qvcs_state(const QuaternionLabel& label, double tau, int j, int n_tilde,
                     int m_tilde, const PhysParams& p, int n_trunc) {
    check_label_ranges(label);
    if (j < 0 || j > 3) throw DomainError("qvcs_state: j must be in 0..3");
    if (n_tilde < 0 || m_tilde < 0) throw DomainError("qvcs_state: Fock indices must be >= 0");
    if (coherent_tail_bound(label.r, n_trunc) > 1e-12 ||
        coherent_tail_bound(label.rho, n_trunc) > 1e-12)
        throw TruncationError("qvcs_state: truncation tail mass exceeds 1e-12");
    const DeformedQuantities d = derive(p);
    const QuaternionPair qp = quaternion_build(label);
    const Eigen::Matrix4cd qbar = qp.q.conjugate();
    const Eigen::Matrix4cd Qbar = qp.Q.conjugate();

    Eigen::Vector4cd chi = Eigen::Vector4cd::Zero();
    chi[j] = 1.0;
    // coefficient order: (running first factor)^n (fixed conjugate)^nt
    // (running second factor)^m (fixed conjugate)^mt, applied right to left
    Eigen::Vector4cd u0 = chi;
    for (int k = 1; k <= m_tilde; ++k) u0 = Qbar * u0 / std::sqrt(double(k));
    u0 /= std::sqrt(qvcs_normalization(label));
    Eigen::Matrix4cd qbar_pow = Eigen::Matrix4cd::Identity();
    for (int k = 1; k <= n_tilde; ++k) qbar_pow = qbar * qbar_pow / std::sqrt(double(k));

    QvcsState st;
    st.n_trunc = n_trunc;
    st.j = j;
    st.n_tilde = n_tilde;
    st.m_tilde = m_tilde;
    st.coeff.assign(static_cast<size_t>(n_trunc) * n_trunc, Eigen::Vector4cd::Zero());

    Eigen::Vector4cd um = u0;
    for (int m = 0; m < n_trunc; ++m) {
        if (m > 0) um = qp.Q * um / std::sqrt(double(m));
        Eigen::Vector4cd c = qbar_pow * um;
        for (int n = 0; n < n_trunc; ++n) {
            st.coeff[static_cast<size_t>(n) * n_trunc + m] =
                c * std::polar(1.0, -tau * dimensionless_energy(d, n, m));
            c = qp.q * c / std::sqrt(double(n + 1));
        }
    }
    return st;
}

double qvcs_family_norm(const QuaternionLabel& label, const PhysParams& p, int n_trunc,
                        int family_cut) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int nt = 0; nt <= family_cut; ++nt)
            for (int mt = 0; mt <= family_cut; ++mt) {
                const QvcsState st = qvcs_state(label, 0.0, j, nt, mt, p, n_trunc);
                for (const auto& v : st.coeff) acc += v.squaredNorm();
            }
    return acc;
}

double qvcs_moment_check(int n, int m, int order) {
    const double pn = moment_weight_integral(n, order) / std::exp(std::lgamma(n + 1.0));
    const double pm = moment_weight_integral(m, order) / std::exp(std::lgamma(m + 1.0));
    return std::abs(pn * pm - 1.0);
}

namespace {

// raising matrix on a truncated mode: (n+1, n) entry sqrt(n+1)
Eigen::MatrixXcd raising(int n) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) r(k, k - 1) = std::sqrt(static_cast<double>(k));
    return r;
}

} // namespace

DisplacementReport displacement_check(const QuaternionLabel& label, const PhysParams& p,
                                      int n_trunc) {
    if (n_trunc < 8) throw TruncationError("displacement_check: n_trunc too small");
    if (label.r > 1.0 || label.rho > 1.0)
        throw TruncationError("displacement_check: moduli limited to <= 1");
    const QuaternionPair qp = quaternion_build(label);
    const int N = n_trunc;
    const Eigen::MatrixXcd up = raising(N);
    const Eigen::MatrixXcd down = up.adjoint();

    // generator with the matrix label attached to the index-raising action
    const Eigen::MatrixXcd gen_r = Eigen::kroneckerProduct(qp.q, up).eval() -
                                   Eigen::kroneckerProduct(qp.q.adjoint(), down).eval();
    const Eigen::MatrixXcd gen_r_conj =
        Eigen::kroneckerProduct(qp.q.adjoint(), up).eval() -
        Eigen::kroneckerProduct(qp.q, down).eval();
    const Eigen::MatrixXcd gen_l = Eigen::kroneckerProduct(qp.Q, up).eval() -
                                   Eigen::kroneckerProduct(qp.Q.adjoint(), down).eval();

    const Eigen::MatrixXcd e_r(gen_r.exp());
    const Eigen::MatrixXcd e_r_conj(gen_r_conj.exp());
    const Eigen::MatrixXcd e_l(gen_l.exp());

    // normal-ordered factorization against the direct exponential, compared
    // on the low-lying block where truncation plays no role
    const double r2 = label.r * label.r;
    const Eigen::MatrixXcd exp_create = Eigen::kroneckerProduct(qp.q, up).eval().exp();
    const Eigen::MatrixXcd exp_annihilate =
        Eigen::kroneckerProduct(-qp.q.adjoint(), down).eval().exp();
    const Eigen::MatrixXcd factored = std::exp(-0.5 * r2) * (exp_create * exp_annihilate);
    // compare entries whose level indices stay far from the truncation edge;
    // the composite index is (component * N + level)
    const int keep_n = N / 3;
    double factorization_gap = 0.0;
    for (int cr = 0; cr < 4; ++cr)
        for (int nr = 0; nr < keep_n; ++nr)
            for (int cc = 0; cc < 4; ++cc)
                for (int nc = 0; nc < keep_n; ++nc)
                    factorization_gap = std::max(
                        factorization_gap, std::abs(e_r(cr * N + nr, cc * N + nc) -
                                                    factored(cr * N + nr, cc * N + nc)));

    // displaced vacuum: apply the m-side operator first, then the n-side one,
    // matching the left-to-right coefficient order of the direct expansion
    const auto displaced_state = [&](const Eigen::MatrixXcd& er, int j, int nt, int mt) {
        Eigen::Vector4cd chi = Eigen::Vector4cd::Zero();
        chi[j] = 1.0;
        Eigen::Vector4cd v0 = chi;
        for (int k = 1; k <= mt; ++k) v0 = qp.Q.conjugate() * v0 / std::sqrt(double(k));
        for (int k = 1; k <= nt; ++k) v0 = qp.q.conjugate() * v0 / std::sqrt(double(k));

        // x(c, m, n), start with all weight in (m, n) = (0, 0)
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(4, N * N);
        for (int c = 0; c < 4; ++c) x(c, 0) = v0[c];

        // m-side: for each n column, act on the (c, m) slice
        Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(4, N * N);
        for (int n = 0; n < N; ++n) {
            Eigen::VectorXcd slice(4 * N);
            for (int c = 0; c < 4; ++c)
                for (int m = 0; m < N; ++m) slice[c * N + m] = x(c, m * N + n);
            slice = e_l * slice;
            for (int c = 0; c < 4; ++c)
                for (int m = 0; m < N; ++m) y(c, m * N + n) = slice[c * N + m];
        }
        // n-side: for each m row, act on the (c, n) slice
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(4, N * N);
        for (int m = 0; m < N; ++m) {
            Eigen::VectorXcd slice(4 * N);
            for (int c = 0; c < 4; ++c)
                for (int n = 0; n < N; ++n) slice[c * N + n] = y(c, m * N + n);
            slice = er * slice;
            for (int c = 0; c < 4; ++c)
                for (int n = 0; n < N; ++n) z(c, m * N + n) = slice[c * N + n];
        }
        const double pref =
            0.5 * std::exp(-0.5 * (label.r * label.r + label.rho * label.rho));
        return (pref * z).eval();
    };

    const int j = 0, nt = 0, mt = 0;
    const QvcsState direct = qvcs_state(label, 0.0, j, nt, mt, p, N);
    const auto deviation_from = [&](const Eigen::MatrixXcd& disp) {
        double acc = 0.0;
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < N; ++m) {
                const Eigen::Vector4cd v = direct.coeff[static_cast<size_t>(n) * N + m];
                for (int c = 0; c < 4; ++c) acc += std::norm(disp(c, m * N + n) - v[c]);
            }
        return std::sqrt(acc);
    };

    DisplacementReport rep{};
    rep.deviation = deviation_from(displaced_state(e_r, j, nt, mt));
    rep.deviation_conjugated = deviation_from(displaced_state(e_r_conj, j, nt, mt));
    rep.factorization_gap = factorization_gap;
    return rep;
}

QvcsClosedForms qvcs_closed_forms(const QuaternionLabel& label, int j, double theta,
                                  double hbar) {
    if (!(theta > 0.0)) throw DomainError("qvcs_closed_forms: theta must be positive");
    QvcsClosedForms f{};
    const double r = label.r;
    const double vt = label.vartheta;  // the de Moivre angle drives every moment
    const double s2 = hbar * hbar / (2.0 * theta);
    const double t2 = 0.5 * theta;
    const double sinv = std::sin(vt), cosv = std::cos(vt);
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // fixed by the oracle

    f.mean_px = sign * 0.5 * hbar / std::sqrt(2.0 * theta) * r * std::cos(label.phi) * sinv;
    f.mean_py = -0.5 * hbar / std::sqrt(2.0 * theta) * r * cosv;
    f.mean_px2 = s2 * (r * r * sinv * sinv + 0.25);
    f.mean_py2 = s2 * (r * r * cosv * cosv + 0.25);
    const double bracket_x = 3.0 * r * r * cosv * cosv + 1.0;
    const double bracket_y =
        4.0 * r * r * sinv * sinv -
        r * r * std::cos(label.phi) * std::cos(label.phi) * sinv * sinv + 1.0;
    f.var_px = 0.25 * s2 * bracket_y;
    f.var_py = 0.25 * s2 * bracket_x;
    f.var_x = 0.25 * t2 * bracket_x;
    f.var_y = 0.25 * t2 * bracket_y;
    f.big_f = bracket_x * bracket_y;
    f.product_xy2 = (theta * theta / 4.0) / 16.0 * f.big_f;
    f.product_xpx2 = (hbar * hbar / 4.0) / 16.0 * f.big_f;
    f.product_ypy2 = (hbar * hbar / 4.0) / 16.0 * f.big_f;
    f.product_pxpy2 = (std::pow(hbar, 4) / (4.0 * theta * theta)) / 16.0 * f.big_f;
    return f;
}

QvcsStatistics qvcs_statistics(const QuaternionLabel& label, int j, double theta,
                               double hbar, int n_trunc, int family_cut) {
    if (!(theta > 0.0)) throw DomainError("qvcs_statistics: theta must be positive");
    if (coherent_tail_bound(label.r, family_cut) > 1e-12 ||
        coherent_tail_bound(label.rho, family_cut) > 1e-12)
        throw TruncationError("qvcs_statistics: family cut too small for the label");
    PhysParams p;  // statistics do not depend on the spectrum, only on theta
    const int N = n_trunc;

    double norm = 0.0, nsum = 0.0, n1sum = 0.0;
    std::complex<double> a1{0.0, 0.0}, a2{0.0, 0.0};
    for (int nt = 0; nt <= family_cut; ++nt)
        for (int mt = 0; mt <= family_cut; ++mt) {
            const QvcsState st = qvcs_state(label, 0.0, j, nt, mt, p, N);
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < N; ++m) {
                    const Eigen::Vector4cd& c = st.at(n, m);
                    const double w = c.squaredNorm();
                    norm += w;
                    nsum += n * w;
                    n1sum += (n + 1.0) * w;
                    if (n + 1 < N)
                        a1 += std::sqrt(n + 1.0) * st.at(n + 1, m).dot(c);
                    if (n + 2 < N)
                        a2 += std::sqrt((n + 1.0) * (n + 2.0)) * st.at(n + 2, m).dot(c);
                }
        }

    const double s = hbar / std::sqrt(2.0 * theta);
    const double t = std::sqrt(0.5 * theta);
    QvcsStatistics out{};
    out.family_norm = norm;
    out.mean_px = 2.0 * s * a1.imag();
    out.mean_py = -2.0 * s * a1.real();
    out.mean_x = 2.0 * t * a1.real();
    out.mean_y = 2.0 * t * a1.imag();
    out.mean_px2 = -s * s * (2.0 * a2.real() - (nsum + n1sum));
    out.mean_py2 = s * s * (2.0 * a2.real() + nsum + n1sum);
    out.mean_x2 = t * t * (2.0 * a2.real() + nsum + n1sum);
    out.mean_y2 = -t * t * (2.0 * a2.real() - (nsum + n1sum));
    out.var_px = out.mean_px2 - out.mean_px * out.mean_px;
    out.var_py = out.mean_py2 - out.mean_py * out.mean_py;
    out.var_x = out.mean_x2 - out.mean_x * out.mean_x;
    out.var_y = out.mean_y2 - out.mean_y * out.mean_y;
    out.product_xy2 = out.var_x * out.var_y;
    out.product_xpx2 = out.var_x * out.var_px;
    out.product_ypy2 = out.var_y * out.var_py;
    out.product_pxpy2 = out.var_px * out.var_py;
    out.comm_x_px_abs = hbar * (n1sum - nsum);
    return out;
}

std::vector<QvcsComparisonRow> qvcs_compare(const QuaternionLabel& label, int j,
                                            double theta, double hbar, int n_trunc,
                                            int family_cut) {
    const QvcsClosedForms f = qvcs_closed_forms(label, j, theta, hbar);
    const QvcsStatistics o = qvcs_statistics(label, j, theta, hbar, n_trunc, family_cut);
    std::vector<QvcsComparisonRow> rows;
    const auto push = [&rows](const char* name, double closed, double oracle) {
        rows.push_back({name, closed, oracle, closed - oracle});
    };
    push("mean_px", f.mean_px, o.mean_px);
    push("mean_py", f.mean_py, o.mean_py);
    push("mean_px2", f.mean_px2, o.mean_px2);
    push("mean_py2", f.mean_py2, o.mean_py2);
    push("var_px", f.var_px, o.var_px);
    push("var_py", f.var_py, o.var_py);
    push("var_x", f.var_x, o.var_x);
    push("var_y", f.var_y, o.var_y);
    push("product_xy2", f.product_xy2, o.product_xy2);
    push("product_xpx2", f.product_xpx2, o.product_xpx2);
    push("product_ypy2", f.product_ypy2, o.product_ypy2);
    push("product_pxpy2", f.product_pxpy2, o.product_pxpy2);
    return rows;
}

} // namespace nclandau
