#include "nclandau/errors.hpp"
#include "nclandau/quadrature.hpp"
#include "nclandau/wavefunctions.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nclandau;

namespace {

PhysParams deformed_point() {
    PhysParams p;
    p.omega_c = 1.0;
    p.theta = 0.1;
    return p;
}

} // namespace

TEST_CASE("Laguerre base cases") {
    CHECK(laguerre(0, 0, 3.7) == 1.0);
    CHECK(laguerre(0, 5, 100.0) == 1.0);
    CHECK(laguerre(1, 0, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
    // explicit quadratic: 3 - 3x + x^2/2 at x = 2
    CHECK(laguerre(2, 1, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(laguerre_sum(2, 1, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("sum and recurrence agree to 1e-12 on a randomized grid") {
    std::mt19937 rng(20240);
    std::uniform_int_distribution<int> un(0, 50), ua(0, 20);
    std::uniform_real_distribution<double> ux(0.0, 100.0);
    for (int i = 0; i < 400; ++i) {
        const int n = un(rng), a = ua(rng);
        const double x = ux(rng);
        const double s = laguerre_sum(n, a, x);
        const double r = laguerre_recurrence(n, a, x);
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(x);
        CHECK(std::abs(s - r) <= 1e-12 * std::max({std::abs(s), std::abs(r), 1.0}));
    }
}

TEST_CASE("ground-state wavefunction is the Gaussian") {
    const PhysParams p = deformed_point();
    const double xi = derive(p).xi;
    for (double r : {0.0, 0.4, 1.3}) {
        const std::complex<double> v = psi({0, 0}, r, 0.7, p);
        CHECK(v.real() ==
              doctest::Approx(std::sqrt(xi / M_PI) * std::exp(-0.5 * xi * r * r)).epsilon(1e-14));
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("modulus does not depend on the angle") {
    const PhysParams p = deformed_point();
    const PolarLevel level{2, -3};
    const double ref = std::abs(psi(level, 0.9, 0.0, p));
    for (double phi : {0.1, 1.0, 2.5, 4.4, 6.0})
        CHECK(std::abs(psi(level, 0.9, phi, p)) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("radial normalization via quadrature") {
    const PhysParams p = deformed_point();
    CHECK(orthonormality_deviation({0, 0}, {0, 0}, p) < 1e-12);
    CHECK(orthonormality_deviation({0, 1}, {0, 1}, p) < 1e-12);
    CHECK(orthonormality_deviation({0, 1}, {1, 1}, p) < 1e-9);
    CHECK(orthonormality_deviation({2, -2}, {5, -2}, p) < 1e-9);
    CHECK(orthonormality_deviation({1, 2}, {1, 3}, p) == 0.0);  // angular selection
}

TEST_CASE("orthonormality over a level grid") {
    const PhysParams p = deformed_point();
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2)
            for (int r1 = -3; r1 <= 3; ++r1)
                for (int r2 = -3; r2 <= 3; ++r2) {
                    CAPTURE(n1);
                    CAPTURE(n2);
                    CAPTURE(r1);
                    CAPTURE(r2);
                    CHECK(orthonormality_deviation({n1, r1}, {n2, r2}, p) < 1e-9);
                }
}

TEST_CASE("polar energies") {
    PhysParams p = deformed_point();
    p.E1 = p.E2 = 0.0;
    const DeformedQuantities d = derive(p);
    CHECK(energy_polar({0, 0}, p) == doctest::Approx(0.5 * d.Omega_tilde).epsilon(1e-15));

    // rho -> -rho flips only the cyclotron term
    const double up = energy_polar({3, 4}, p);
    const double down = energy_polar({3, -4}, p);
    CHECK(up - down == doctest::Approx(4.0 * d.omega_c_tilde).epsilon(1e-13));

    // frozen high-precision evaluation at the reference point, n = 1, rho = 2
    CHECK(energy_polar({1, 2}, p) == doctest::Approx(6.33257787392906).epsilon(1e-13));
}

TEST_CASE("commutative limit reproduces the Fock-Darwin ladder") {
    PhysParams p;
    p.omega_c = 0.6;
    const double Omega = std::sqrt(4.0 + 0.36);
    for (int n = 0; n <= 3; ++n)
        for (int rho = -3; rho <= 3; ++rho)
            CHECK(energy_polar({n, rho}, p) ==
                  doctest::Approx(Omega * (n + 0.5 * (std::abs(rho) + 1.0)) +
                                  0.3 * rho)
                      .epsilon(1e-13));
}

TEST_CASE("polar vs helicity spectra differ by the documented factor") {
    const PhysParams p = deformed_point();
    const DeformedQuantities d = derive(p);
    for (const auto& row : spectrum_comparison(p, 4, 4)) {
        // shifted energies satisfy E_polar = 2 E_helicity - hbar Omega_tilde / 2 exactly
        const double lhs = row.energy_polar - d.k_eE;
        const double rhs = 2.0 * (row.energy_helicity - d.k_eE) - 0.5 * d.Omega_tilde;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        // ground states coincide, every excited level sits strictly higher
        if (row.n == 0 && row.rho == 0)
            CHECK(row.ratio_shifted == doctest::Approx(1.0).epsilon(1e-14));
        else
            CHECK(row.ratio_shifted > 1.0);
    }
}

TEST_CASE("input guards") {
    const PhysParams p = deformed_point();
    CHECK_THROWS_AS(psi({-1, 0}, 1.0, 0.0, p), DomainError);
    CHECK_THROWS_AS(psi({0, 0}, -1.0, 0.0, p), DomainError);
    CHECK_THROWS_AS(orthonormality_deviation({21, 0}, {0, 0}, p), DomainError);
    CHECK_THROWS_AS(laguerre(-1, 0, 1.0), DomainError);
}

TEST_CASE("quadrature order guard") {
    const PhysParams p = deformed_point();
    CHECK_THROWS_AS(orthonormality_deviation({0, 0}, {0, 0}, p, 151), QuadratureError);
}
