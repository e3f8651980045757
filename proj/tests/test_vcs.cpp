#include "nclandau/errors.hpp"
#include "nclandau/vcs.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nclandau;

namespace {

PhysParams vcs_point() {
    PhysParams p;
    p.omega_c = 0.8;
    p.theta = 0.05;
    return p;
}

QuaternionLabel generic_label() {
    return {0.6, 1.1, 0.8, 0.4, 0.4, 0.9, 0.3, 1.3};
}

} // namespace

TEST_CASE("normalization constant of the diagonal family") {
    DiagLabel zeros;
    CHECK(mvcs_normalization(zeros) == doctest::Approx(4.0).epsilon(1e-15));

    DiagLabel one;
    one.z[0] = 1.0;
    CHECK(mvcs_normalization(one) == doctest::Approx(std::exp(2.0) + 3.0).epsilon(1e-15));
}

TEST_CASE("family norm sums to one") {
    DiagLabel label;
    label.z = {{{0.7, 0.1}, {0.0, -0.5}, {0.3, 0.3}, {0.9, 0.0}}};
    label.w = {{{0.2, 0.0}, {0.6, 0.2}, {0.0, 0.0}, {-0.4, 0.5}}};
    CHECK(mvcs_family_norm(label, vcs_point(), 26, 22) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("temporal stability of the diagonal family") {
    const PhysParams p = vcs_point();
    DiagLabel label;
    label.z[1] = {0.8, -0.2};
    label.w[1] = {0.1, 0.4};
    label.j = 1;
    label.n_tilde = 2;
    label.m_tilde = 1;
    label.tau = 0.3;
    const double step = 1.4;

    DiagLabel advanced = label;
    advanced.tau += step;
    const MvcsState direct = mvcs_state(advanced, p, 18);
    const MvcsState base = mvcs_state(label, p, 18);
    const DeformedQuantities d = derive(p);
    double worst = 0.0;
    for (int n = 0; n < 18; ++n)
        for (int m = 0; m < 18; ++m) {
            const double e =
                0.5 * (d.Omega_plus / d.Omega_tilde * n + d.Omega_minus / d.Omega_tilde * m + 1.0);
            worst = std::max(worst, std::abs(base.coeff(n, m) * std::polar(1.0, -step * e) -
                                             direct.coeff(n, m)));
        }
    CHECK(worst < 1e-15);
}

TEST_CASE("action identity for the diagonal family") {
    DiagLabel zeros;
    const MvcsActionIdentity trivial = mvcs_action_identity(zeros, vcs_point(), 8, 6);
    CHECK(trivial.closed_form == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(trivial.family_expectation == doctest::Approx(0.5).epsilon(1e-12));

    DiagLabel label;
    label.z = {{{0.5, 0.0}, {0.0, 0.6}, {-0.4, 0.2}, {0.3, 0.3}}};
    label.w = {{{0.2, -0.3}, {0.5, 0.0}, {0.1, 0.1}, {0.0, 0.7}}};
    const MvcsActionIdentity id = mvcs_action_identity(label, vcs_point(), 24, 20);
    CHECK(id.family_expectation == doctest::Approx(id.closed_form).epsilon(1e-9));
}

TEST_CASE("resolution-weight moment integrals reproduce factorials") {
    CHECK(moment_weight_integral(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moment_weight_integral(3) == doctest::Approx(6.0).epsilon(1e-12));
    for (int n = 0; n <= 10; ++n) CHECK(moment_weight_check(n) < 1e-9);
}

TEST_CASE("quaternion representation properties") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> half(0.0, M_PI);
    std::uniform_real_distribution<double> mod(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        QuaternionLabel q{mod(rng), angle(rng), half(rng), angle(rng),
                          mod(rng), angle(rng), half(rng), angle(rng)};
        const QuaternionPair pair = quaternion_build(q);
        const Eigen::Matrix4cd qq = pair.q * pair.q.adjoint();
        CHECK((qq - q.r * q.r * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        // the exponential factor alone is unitary
        if (q.r > 1e-12) {
            const Eigen::Matrix4cd u = pair.q / q.r;
            CHECK((u * u.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    // vanishing angle leaves a scaled identity
    const QuaternionPair at_zero = quaternion_build({1.3, 0.0, 0.7, 0.4, 0, 0, 0, 0});
    CHECK((at_zero.q - 1.3 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    // the axis matrix squares to the identity
    const QuaternionPair pair = quaternion_build({1.0, M_PI / 2.0, 0.9, 2.2, 0, 0, 0, 0});
    const Eigen::Matrix4cd axis = pair.q / (std::complex<double>(0.0, 1.0));
    CHECK((axis * axis - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("SU(2) conjugation reproduces the quaternion entrywise") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> half(0.0, M_PI);
    for (int i = 0; i < 30; ++i) {
        QuaternionLabel q{1.1, angle(rng), half(rng), angle(rng), 0, 0, 0, 0};
        const Eigen::Matrix4cd direct = quaternion_build(q).q;
        const Eigen::Matrix4cd conjugated =
            quaternion_from_su2(q.r, q.vartheta, q.phi, q.eta);
        CHECK((direct - conjugated).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("quaternionic family norm and moments") {
    CHECK(qvcs_normalization({0, 0, 0, 0, 0, 0, 0, 0}) == doctest::Approx(4.0).epsilon(1e-15));

    const QuaternionLabel label{0.8, 0.7, 0.5, 1.9, 0.8, 0.2, 1.1, 0.6};
    CHECK(qvcs_family_norm(label, vcs_point(), 26, 24) == doctest::Approx(1.0).epsilon(1e-10));

    for (int n = 0; n <= 10; ++n)
        for (int m = 0; m <= 10; m += 5) CHECK(qvcs_moment_check(n, m) < 1e-9);
}

TEST_CASE("displaced vacuum reconstructs the state") {
    const PhysParams p = vcs_point();

    // zero label: both displacement operators are the identity
    const DisplacementReport trivial = displacement_check({0, 0, 0, 0, 0, 0, 0, 0}, p, 16);
    CHECK(trivial.deviation < 1e-13);
    CHECK(trivial.factorization_gap < 1e-13);

    const QuaternionLabel label{0.5, 0.9, 0.7, 0.3, 0.3, 1.2, 0.4, 0.8};
    const DisplacementReport rep = displacement_check(label, p, 28);
    CHECK(rep.deviation < 1e-8);
    CHECK(rep.factorization_gap < 1e-9);
    // the variant with conjugated matrix slots lands on the opposite-angle
    // state instead; its deviation is genuinely large and reported
    CHECK(rep.deviation_conjugated > 1e-3);
}

TEST_CASE("statistics: zero label saturates the products") {
    const double theta = 1.0;
    const QvcsStatistics o =
        qvcs_statistics({0, 0, 0, 0, 0, 0, 0, 0}, 0, theta, 1.0, 12, 8);
    CHECK(o.family_norm == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::abs(o.mean_px) < 1e-14);
    CHECK(std::abs(o.mean_py) < 1e-14);
    CHECK(o.var_x == doctest::Approx(theta / 8.0).epsilon(1e-12));
    CHECK(o.var_y == doctest::Approx(theta / 8.0).epsilon(1e-12));
    CHECK(o.product_xy2 == doctest::Approx(theta * theta / 64.0).epsilon(1e-12));

    const QvcsClosedForms f = qvcs_closed_forms({0, 0, 0, 0, 0, 0, 0, 0}, 0, theta, 1.0);
    CHECK(f.big_f == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.product_xy2 == doctest::Approx(theta * theta / 64.0).epsilon(1e-15));
}

TEST_CASE("momentum mean at the pinned reference point") {
    // r = 1, de Moivre angle zero: <P_Y> = -1/(2 sqrt 2)
    const QvcsStatistics o = qvcs_statistics({1.0, 0.0, 0.7, 0.9, 0, 0, 0, 0}, 0, 1.0, 1.0, 30, 30);
    CHECK(o.mean_py == doctest::Approx(-0.35355339059327373).epsilon(1e-10));
}

TEST_CASE("closed forms match the oracle where they are exact") {
    const QuaternionLabel label = generic_label();
    for (int j : {0, 1}) {
        const QvcsClosedForms f = qvcs_closed_forms(label, j, 0.5, 1.0);
        const QvcsStatistics o = qvcs_statistics(label, j, 0.5, 1.0, 28, 30);
        CHECK(o.mean_py == doctest::Approx(f.mean_py).epsilon(1e-9));
        CHECK(o.mean_px2 == doctest::Approx(f.mean_px2).epsilon(1e-9));
        CHECK(o.mean_py2 == doctest::Approx(f.mean_py2).epsilon(1e-9));
        CHECK(o.var_py == doctest::Approx(f.var_py).epsilon(1e-9));
        CHECK(o.var_x == doctest::Approx(f.var_x).epsilon(1e-9));
    }
}

TEST_CASE("momentum first moment: sign alternates with the vector index") {
    // at eta = 0 and a commuting second label the closed form is exact
    const QuaternionLabel label{0.5, 0.9, 0.7, 0.0, 0.4, 0.0, 0.0, 0.0};
    for (int j : {0, 1, 2, 3}) {
        const QvcsClosedForms f = qvcs_closed_forms(label, j, 1.0, 1.0);
        const QvcsStatistics o = qvcs_statistics(label, j, 1.0, 1.0, 26, 26);
        CAPTURE(j);
        CHECK(o.mean_px == doctest::Approx(f.mean_px).epsilon(1e-9));
        CHECK(((j % 2 == 0) ? (o.mean_px < 0.0) : (o.mean_px > 0.0)));
    }
}

TEST_CASE("family statistics against an independent oracle") {
    // frozen from a second implementation of the same family sums at the
    // generic non-commuting label (both quaternion axes rotated)
    const QvcsStatistics o = qvcs_statistics(generic_label(), 0, 0.5, 1.0, 28, 36);
    CHECK(o.family_norm == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(o.mean_px == doctest::Approx(-0.19627518).epsilon(1e-7));
    CHECK(o.mean_py == doctest::Approx(-0.13607884).epsilon(1e-7));
    CHECK(o.mean_px2 == doctest::Approx(0.53593020).epsilon(1e-7));
    CHECK(o.mean_py2 == doctest::Approx(0.32406980).epsilon(1e-7));
    CHECK(o.mean_x == doctest::Approx(0.06803942).epsilon(1e-6));
    CHECK(o.mean_y == doctest::Approx(-0.09813759).epsilon(1e-6));
}

TEST_CASE("general labels produce a signed discrepancy report") {
    const auto rows = qvcs_compare(generic_label(), 0, 0.5, 1.0, 26, 28);
    double px_disc = 0.0, py_disc = 1.0;
    for (const auto& r : rows) {
        if (std::string(r.name) == "mean_px") px_disc = std::abs(r.discrepancy);
        if (std::string(r.name) == "mean_py") py_disc = std::abs(r.discrepancy);
    }
    CHECK(px_disc > 1e-4);   // the closed-form first moment misses the axis phases
    CHECK(py_disc < 1e-10);  // while this one is exact
}

TEST_CASE("momentum dispersions carry the halved scale") {
    // the second moments must sum to (hbar^2/2 theta)(r^2 + 1/2): twice that
    // would signal the doubled-denominator variant
    for (double theta : {0.5, 1.0, 2.0}) {
        const QuaternionLabel label{0.7, 1.3, 0.4, 2.0, 0.2, 0.8, 0.9, 0.1};
        const QvcsStatistics o = qvcs_statistics(label, 2, theta, 1.0, 26, 28);
        const double expected = (1.0 / (2.0 * theta)) * (0.7 * 0.7 + 0.5);
        CHECK(o.mean_px2 + o.mean_py2 == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("uncertainty products dominate their lower bounds") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> mod(0.0, 0.8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> half(0.0, M_PI);
    const double hbar = 1.0;
    for (int i = 0; i < 200; ++i) {
        const QuaternionLabel label{mod(rng), angle(rng), half(rng), angle(rng),
                                    mod(rng), angle(rng), half(rng), angle(rng)};
        const double theta = 0.25 + mod(rng);
        const int j = i % 4;
        const QvcsStatistics o = qvcs_statistics(label, j, theta, hbar, 20, 20);
        const double comm2 = o.comm_x_px_abs * o.comm_x_px_abs;
        CAPTURE(i);
        CHECK(o.product_xpx2 >= (comm2 / 4.0) / 16.0 - 1e-12);
        CHECK(o.product_ypy2 >= (comm2 / 4.0) / 16.0 - 1e-12);
        CHECK(o.product_pxpy2 >= -1e-12);
    }
}

TEST_CASE("vanishing noncommutativity is rejected") {
    CHECK_THROWS_AS(qvcs_statistics(generic_label(), 0, 0.0, 1.0, 12, 8), DomainError);
    CHECK_THROWS_AS(qvcs_closed_forms(generic_label(), 0, 0.0, 1.0), DomainError);
}

TEST_CASE("truncation adequacy for the family") {
    CHECK_THROWS_AS(qvcs_state({3.5, 0, 0, 0, 0, 0, 0, 0}, 0.0, 0, 0, 0, vcs_point(), 10),
                    TruncationError);
    DiagLabel big;
    big.z[2] = 4.0;
    CHECK_THROWS_AS(mvcs_state(big, vcs_point(), 8), TruncationError);
}
