#include "nclandau/errors.hpp"
#include "nclandau/thermo.hpp"

#include <doctest.h>

#include <cmath>

using namespace nclandau;

namespace {

PhysParams grid_point(double theta = 0.0, double omega_c = 0.5) {
    PhysParams p;
    p.omega_c = omega_c;
    p.theta = theta;
    return p;
}

} // namespace

TEST_CASE("Fermi-Dirac series special values") {
    CHECK(fermi_dirac_F(3, 0.0) == 0.0);
    CHECK(fermi_dirac_F(1, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(fermi_dirac_F(1, -1.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-13));
    CHECK(fermi_dirac_F(3, -1.0) == doctest::Approx(-0.9015426773696957).epsilon(1e-12));
    CHECK(fermi_dirac_F(2, -1.0) ==
          doctest::Approx(-M_PI * M_PI / 12.0).epsilon(1e-12));
    CHECK(fermi_dirac_F(2, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
    CHECK_THROWS_AS(fermi_dirac_F(3, 1.5), DomainError);
    CHECK_THROWS_AS(fermi_dirac_F(1, 1.0), DomainError);
    CHECK_THROWS_AS(fermi_dirac_F(0, 0.5), DomainError);
}

TEST_CASE("control parameters are ordered") {
    const ThermoInput t{1.0, 5.0, grid_point(0.02)};
    const ControlParams c = control_params(t);
    CHECK(c.kappa_prime_minus < c.kappa_prime_plus);
    CHECK(c.kappa_prime_minus > 0.0);
    CHECK(c.mu_eE == doctest::Approx(5.0).epsilon(1e-15));  // no electric field
}

TEST_CASE("empty system: gamma tends to zero from below") {
    ThermoInput t{40.0, -1.0, grid_point()};
    const GammaResult g = gamma_exact(t, 1e-12);
    CHECK(g.value <= 0.0);
    CHECK(g.value > -1e-10);
}

TEST_CASE("gamma is monotone decreasing in mu and tail-certified") {
    const PhysParams p = grid_point(0.05);
    double prev = 0.0;
    bool first = true;
    for (double mu : {1.0, 3.0, 5.0}) {
        const ThermoInput t{1.0, mu, p};
        const GammaResult g = gamma_exact(t, 1e-10);
        CHECK(g.tail_bound < 1e-10);
        if (!first) CHECK(g.value < prev);
        prev = g.value;
        first = false;
    }
}

TEST_CASE("grand potential against an independent high-precision evaluation") {
    // frozen from an arbitrary-precision double sum of the same lattices
    const ThermoInput t{1.0, 5.0, grid_point(0.05)};
    CHECK(gamma_exact(t, 1e-12, SpectrumBasis::helicity).value ==
          doctest::Approx(-89.412331).epsilon(2e-7));
    CHECK(gamma_exact(t, 1e-12, SpectrumBasis::polar).value ==
          doctest::Approx(-28.605883).epsilon(2e-7));

    const ThermoInput t0{1.0, 5.0, grid_point(0.0)};
    CHECK(gamma_exact(t0, 1e-12, SpectrumBasis::helicity).value ==
          doctest::Approx(-89.260062).epsilon(2e-7));
    const ThermoInput t2{2.0, 8.0, grid_point(0.0)};
    CHECK(gamma_exact(t2, 1e-12, SpectrumBasis::polar).value ==
          doctest::Approx(-87.87343873).epsilon(1e-9));
    const ThermoInput t3{2.0, 8.0, grid_point(0.05)};
    CHECK(gamma_exact(t3, 1e-12, SpectrumBasis::polar).value ==
          doctest::Approx(-87.89007873).epsilon(1e-9));
}

TEST_CASE("tail certificate bounds the truncation error") {
    const ThermoInput t{1.5, 6.0, grid_point(0.02)};
    for (const SpectrumBasis basis : {SpectrumBasis::helicity, SpectrumBasis::polar}) {
        const GammaResult coarse = gamma_exact(t, 1e-5, basis);
        const GammaResult fine = gamma_exact(t, 1e-13, basis);
        CHECK(coarse.tail_bound < 1e-5);
        CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound + 1e-12);
        CHECK(fine.terms >= coarse.terms);
    }
}

TEST_CASE("bound integral: closed form vs adaptive quadrature") {
    const ThermoInput t{1.0, 0.0, grid_point()};
    for (double kp : {0.1, 1.0, 3.0, 10.0, M_E}) {
        const double closed = phi_closed(kp, t);
        const double quad = phi_quadrature(kp, t);
        CHECK(std::abs(closed - quad) / std::abs(quad) < 1e-8);
    }
    // branch continuity across kappa' = 1
    CHECK(phi_closed(1.0 - 1e-9, t) == doctest::Approx(phi_closed(1.0 + 1e-9, t)).epsilon(1e-7));
    // kappa' -> 0 drives phi to zero
    CHECK(std::abs(phi_closed(1e-12, t)) < 1e-10);
}

TEST_CASE("phi carries the cubic beta prefactor") {
    const ThermoInput t{2.0, 0.0, grid_point()};
    CHECK(phi_closed(1.0, t) ==
          doctest::Approx(4.0 / (2.0 * 4.0) * fermi_dirac_F(3, -1.0)).epsilon(1e-13));
}

TEST_CASE("sandwich bounds hold on the validity grid") {
    for (double beta : {0.5, 1.0, 2.0})
        for (double mu : {2.0, 5.0, 8.0})
            for (double theta : {0.0, 0.02, 0.05}) {
                const ThermoInput t{beta, mu, grid_point(theta)};
                const auto [lo, hi] = berezin_lieb_bounds(t);
                CHECK(lo <= hi);
                const double g = gamma_exact(t, 1e-10).value;
                CAPTURE(beta);
                CAPTURE(mu);
                CAPTURE(theta);
                CHECK(lo <= g);
                CHECK(g <= hi);
            }
}

TEST_CASE("high-temperature limit of the bounds") {
    // as beta -> 0 both control parameters approach one and the bounds
    // collapse onto 4 F_3(-1) / (beta (beta hbar omega0)^2)
    const ThermoInput t{1e-4, 0.3, grid_point(0.0)};
    const auto [lo, hi] = berezin_lieb_bounds(t);
    const double limit = 4.0 / (t.beta * t.beta * t.beta) * fermi_dirac_F(3, -1.0);
    CHECK(lo == doctest::Approx(limit).epsilon(1e-3));
    CHECK(hi == doctest::Approx(limit).epsilon(1e-3));
    CHECK((hi - lo) / std::abs(limit) < 1e-3);
}

TEST_CASE("bounds coincide when the gap closes") {
    // hbar Omega -> 0 is outside the parameter domain; verify instead that the
    // gap between the bounds shrinks linearly with the spectral gap
    const ThermoInput t1{1.0, 3.0, grid_point()};
    PhysParams narrow = grid_point();
    narrow.omega0 = 0.25;  // smaller Omega_tilde
    const ThermoInput t2{1.0, 3.0, narrow};
    const auto [lo1, hi1] = berezin_lieb_bounds(t1);
    const auto [lo2, hi2] = berezin_lieb_bounds(t2);
    const double gap1 = (hi1 - lo1) / std::abs(lo1);
    const double gap2 = (hi2 - lo2) / std::abs(lo2);
    CHECK(gap2 < gap1);
}

TEST_CASE("low-temperature suite") {
    ThermoInput t{30.0, 10.0, grid_point()};
    const LowTempSuite s = low_temp_suite(t);
    CHECK(s.n_electrons_leading == doctest::Approx(200.0).epsilon(1e-15));
    CHECK(std::abs(s.n_electrons - 200.0) / 200.0 < 0.05);
    CHECK(s.valid_mu_gg_gap);
    CHECK(s.valid_mu_gg_T);

    // the ratio shrinks deeper into the degenerate regime
    const LowTempSuite far = low_temp_suite({60.0, 40.0, grid_point()});
    CHECK(far.ratio < s.ratio);
    CHECK(far.ratio < 0.25);

    // the decomposition reassembles phi at both control parameters
    const ControlParams c = control_params(t);
    const double s_plus =
        4.0 / (t.beta * std::pow(t.beta, 2)) * fermi_dirac_F(3, -1.0 / c.kappa_prime_plus);
    CHECK(phi_closed_log(c.log_kappa_prime_plus, t) ==
          doctest::Approx(s.A - s.delta_half + s_plus).epsilon(1e-10));
    const double s_minus =
        4.0 / (t.beta * std::pow(t.beta, 2)) * fermi_dirac_F(3, -1.0 / c.kappa_prime_minus);
    CHECK(phi_closed_log(c.log_kappa_prime_minus, t) ==
          doctest::Approx(s.A + s.delta_half + s_minus).epsilon(1e-10));
}

TEST_CASE("electron number equals the chemical-potential derivative") {
    PhysParams p = grid_point(0.02);
    p.E1 = 0.3;
    const ThermoInput t{20.0, 9.0, p};
    const LowTempSuite s = low_temp_suite(t);
    const double h = 1e-5;
    const LowTempSuite up = low_temp_suite({t.beta, t.mu + h, p});
    const LowTempSuite down = low_temp_suite({t.beta, t.mu - h, p});
    const double numeric = -(up.gamma_approx - down.gamma_approx) / (2.0 * h);
    CHECK(s.n_electrons == doctest::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("closed magnetization equals the field derivative of the smooth part") {
    PhysParams p = grid_point(0.02, 0.6);
    p.E1 = 0.4;
    p.E2 = -0.2;
    const ThermoInput t{25.0, 8.0, p};
    const double h = 1e-5;
    ThermoInput tp = t, tm = t;
    tp.p = p.with_b_shift(h);
    tm.p = p.with_b_shift(-h);
    // only the spectral-gap term of the expansion carries field dependence
    const double numeric =
        -(low_temp_suite(tp).A - low_temp_suite(tm).A) / (2.0 * h);
    CHECK(magnetic_moment_closed(t) == doctest::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("electric field only shifts the effective chemical potential") {
    PhysParams p = grid_point(0.02);
    p.E1 = 0.4;
    p.E2 = -0.3;
    const ThermoInput t{1.0, 5.0, p};
    const ControlParams c = control_params(t);
    const DeformedQuantities d = derive(p);
    CHECK(c.mu_eE == doctest::Approx(5.0 - d.k_eE).epsilon(1e-15));
    CHECK(c.mu_eE > 5.0);  // k_eE < 0 for any nonzero field
}

TEST_CASE("magnetization and susceptibility closed forms at theta = 0") {
    const ThermoInput t{1.0, 5.0, grid_point(0.0, 0.5)};
    CHECK(magnetic_moment_closed(t) == doctest::Approx(5.0 * 0.5).epsilon(1e-14));
    CHECK(susceptibility_closed(t) == doctest::Approx(5.0).epsilon(1e-14));

    // electric-field term multiplies the same bracket
    PhysParams pf = grid_point(0.01, 0.5);
    pf.E1 = 0.6;
    pf.E2 = 0.2;
    const ThermoInput tf{1.0, 5.0, pf};
    const DeformedQuantities d = derive(pf);
    const ThermoInput t0{1.0, 5.0, grid_point(0.01, 0.5)};
    const double bracket = magnetic_moment_closed(t0) / 5.0;
    CHECK(magnetic_moment_closed(tf) ==
          doctest::Approx((5.0 + 0.5 * (pf.E1 * d.x0 + pf.E2 * d.y0)) * bracket)
              .epsilon(1e-12));
}

TEST_CASE("susceptibility equals the field derivative of the moment") {
    const ThermoInput t{1.0, 5.0, grid_point(0.015, 0.6)};
    const double h = 1e-5;
    ThermoInput tp = t, tm = t;
    tp.p = t.p.with_b_shift(h);
    tm.p = t.p.with_b_shift(-h);
    const double numeric =
        (magnetic_moment_closed(tp) - magnetic_moment_closed(tm)) / (2.0 * h);
    CHECK(susceptibility_closed(t) == doctest::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("oscillatory helpers reduce correctly and grow geometrically") {
    const ThermoInput t{5.0, 6.0, grid_point(0.0, 0.3)};
    const OscHelpers h = osc_helpers(t);
    CHECK(h.Theta_shift == 0.0);
    CHECK(h.B_theta == 0.0);
    CHECK(h.I_factor == doctest::Approx(1.0).epsilon(1e-15));
    const DeformedQuantities d = derive(t.p);
    CHECK(h.K_factor == doctest::Approx(t.p.omega_c / d.Omega).epsilon(1e-14));
    CHECK(h.L_factor == doctest::Approx(0.5 * d.Omega).epsilon(1e-14));

    // sinh factors suppress successive harmonics geometrically
    const double growth = h.sinh_k_Omega(2) / h.sinh_k_Omega(1);
    CHECK(growth > std::exp(2.0 * M_PI * M_PI / (t.beta * d.Omega_tilde)) * 0.5);
}

TEST_CASE("decomposition pieces at the reference point") {
    const ThermoInput t{5.0, 6.0, grid_point(0.02, 0.3)};
    const GammaBreakdown b = poisson_decomposition(t);
    // frozen from an arbitrary-precision evaluation of the same sums
    CHECK(b.gamma0 == doctest::Approx(-35.89478418).epsilon(1e-8));
    CHECK(b.gammaL == doctest::Approx(0.01953705).epsilon(1e-6));
    CHECK(b.gammaOsc == doctest::Approx(-0.01062728).epsilon(1e-4));
    CHECK(b.gamma_exact_polar == doctest::Approx(-35.88598193).epsilon(1e-8));
    CHECK(std::abs(b.residual_polar) < 5e-4);
    CHECK(b.mu_gg_T);

    // theta = 0 reduction of the field-correction term
    const ThermoInput t0{5.0, 6.0, grid_point(0.0, 0.3)};
    const GammaBreakdown b0 = poisson_decomposition(t0);
    CHECK(b0.gammaL == doctest::Approx(6.0 / 24.0 * 0.09).epsilon(1e-14));
}

TEST_CASE("smooth part reassembles the closed bound form") {
    const ThermoInput t{2.0, 8.0, grid_point(0.0, 0.5)};
    const GammaBreakdown b = poisson_decomposition(t);
    const double via_phi = 0.25 * phi_closed_log(t.beta * 8.0, t) + 8.0 / 12.0;
    CHECK(b.gamma0 == doctest::Approx(via_phi).epsilon(1e-9));

    // the smooth part carries no field dependence
    const GammaBreakdown b2 = poisson_decomposition({2.0, 8.0, grid_point(0.0, 0.3)});
    CHECK(b.gamma0 == doctest::Approx(b2.gamma0).epsilon(1e-14));
}

TEST_CASE("numerical magnetization matches the smooth closed form") {
    const ThermoInput t{1.0, 10.0, grid_point(0.0, 0.5)};
    const double m = magnetic_moment_numeric(t, 0.005);
    const double m_smooth = -10.0 / 12.0 * 0.5;  // field-correction derivative
    CHECK(std::abs(m - m_smooth) / std::abs(m_smooth) < 1e-4);
    CHECK_THROWS_AS(magnetic_moment_numeric(t, -0.1), StepError);
}

TEST_CASE("decomposition rejects insufficient cutoffs") {
    const ThermoInput t{5.0, 6.0, grid_point(0.0, 0.3)};
    CHECK_THROWS_AS(poisson_decomposition(t, 4, 4), DomainError);
    // very low temperature needs more harmonics than the default cutoff
    const ThermoInput cold{80.0, 6.0, grid_point(0.0, 0.3)};
    CHECK_THROWS_AS(poisson_decomposition(cold, 8, 8), ConvergenceError);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(gamma_exact({-1.0, 5.0, grid_point()}, 1e-10), DomainError);
    CHECK_THROWS_AS(phi_closed(-2.0, {1.0, 0.0, grid_point()}), DomainError);
}
