#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "morsedyn/constants.hpp"
#include "morsedyn/morse.hpp"
#include "morsedyn/specfun.hpp"

using namespace morsedyn;

TEST_SUITE_BEGIN("morse");

TEST_CASE("NO parameters reproduce the published constants") {
    const MorseParameters p = test::no_params();
    CHECK(p.s == doctest::Approx(54.54).epsilon(2e-4));  // s = 54.538
    CHECK(p.s == doctest::Approx(54.538364030410669).epsilon(1e-12));
    CHECK(p.n_bound == 55);
    CHECK(p.sigma == doctest::Approx(p.s - 54.0).epsilon(1e-14));
    // omega0 sits at the NO fundamental, ~1904 cm^-1
    const double wavenumber =
        p.omega0 / (2.0 * constants::pi * constants::speed_of_light_m_s * 100.0);
    CHECK(wavenumber == doctest::Approx(1904.19).epsilon(1e-4));
    CHECK(p.period_s() == doctest::Approx(1.7517345241853013e-14).epsilon(1e-12));
    CHECK_FALSE(p.degenerate());
}

TEST_CASE("forced dimensionless parameter values") {
    // inputs engineered so sqrt(2 m D0)/(hbar alpha) hits a target exactly:
    // scale the NO mass by (target/(s_NO + 1/2))^2
    const MorseParameters no = test::no_params();
    auto forced = [&](double target) {
        const double factor = target / (no.s + 0.5);
        return derive_params(7.466433 * factor * factor, 6.497, 27.68);
    };
    const MorseParameters a = forced(1.0);
    CHECK(a.s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.n_bound == 1);
    CHECK(a.degenerate());

    const MorseParameters b = forced(3.2);
    CHECK(b.s == doctest::Approx(2.7).epsilon(1e-12));
    CHECK(b.sigma == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(b.n_bound == 3);
}

TEST_CASE("derive_params rejects non-positive input") {
    CHECK_THROWS_AS(derive_params(0.0, 6.497, 27.68), std::domain_error);
    CHECK_THROWS_AS(derive_params(7.46, -1.0, 27.68), std::domain_error);
    CHECK_THROWS_AS(derive_params(7.46, 6.497, 0.0), std::domain_error);
}

TEST_CASE("bound energies") {
    const MorseParameters p = test::params_from_s(54.54);
    CHECK(bound_energy(p, 0) == doctest::Approx(-54.54 * 54.54).epsilon(1e-14));
    CHECK(bound_energy(p, 54) == doctest::Approx(-0.2916).epsilon(1e-12));
    CHECK(bound_energy(p, 42) == doctest::Approx(-157.2516).epsilon(1e-12));
    CHECK_THROWS_AS(bound_energy(p, -1), std::domain_error);
    CHECK_THROWS_AS(bound_energy(p, 55), std::domain_error);
}

TEST_CASE("ladder coefficients") {
    SUBCASE("sigma = 1/2 collapses to C_k = k") {
        const MorseParameters p = test::params_from_s(7.5);
        const auto c = ladder_coefficients(p, 12);
        for (int k = 0; k <= 12; ++k) CHECK(c[k] == doctest::Approx(k).epsilon(1e-14));
    }
    SUBCASE("sigma = 0.54 values") {
        const MorseParameters p = test::params_from_s(54.54);
        const auto c = ladder_coefficients(p, 4);
        CHECK(c[0] == 0.0);
        CHECK(c[1] == doctest::Approx(std::sqrt(1.08)).epsilon(1e-14));
        CHECK(c[2] == doctest::Approx(std::sqrt(2.0 * 2.08)).epsilon(1e-14));
        for (int k = 2; k <= 4; ++k) CHECK(c[k] > c[k - 1]);
    }
}

TEST_CASE("h0 matrix structure") {
    const MorseParameters p = test::params_from_s(54.54);
    const int N = 80;
    const TridiagonalMatrix h = h0_matrix(p, N);
    REQUIRE(h.size() == N + 1);

    // bound/positive decoupling is exact, not approximate
    CHECK(h.offdiag[54] == 0.0);
    CHECK(h.diag[0] == doctest::Approx(-58.6116).epsilon(1e-12));

    const auto c = ladder_coefficients(p, N + 1);
    for (int n = 0; n < N; ++n)
        CHECK(h.offdiag[n] == doctest::Approx((54 - n) * c[n + 1]).epsilon(1e-14));

    CHECK_THROWS_AS(h0_matrix(p, 10), std::domain_error);
}

TEST_CASE("phi_0 closed form") {
    const MorseParameters p = test::params_from_s(54.54);
    const double two_s1 = 2.0 * p.s + 1.0;
    for (double x : {-0.5, 0.0, 1.0, 3.0}) {
        const double y = two_s1 * std::exp(-x);
        const double expect = std::exp(-0.5 * specfun::log_gamma(2.0 * p.sigma)) *
                              std::pow(y, p.sigma) * std::exp(-0.5 * y);
        CHECK(phi_wavefunction(p, 0, x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("phi_0 is normalized: integral of phi_0^2 dx = 1") {
    // dx = -dy/y turns the norm into a Gauss-Laguerre sum with weight
    // y^{2 sigma - 1} e^{-y}
    const MorseParameters p = test::no_params();
    const auto rule = specfun::gauss_laguerre(48, 2.0 * p.sigma - 1.0);
    double norm = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const double y = rule.nodes[i];
        const double x = std::log((2.0 * p.s + 1.0) / y);
        const double phi = phi_wavefunction(p, 0, x);
        // integrand is phi^2/y; divided by the weight y^{2 sigma - 1} e^{-y}
        // that leaves phi^2 / (y^{2 sigma} e^{-y})
        norm += rule.weights[i] * phi * phi / (std::pow(y, 2.0 * p.sigma) * std::exp(-y));
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phi_n has exactly n sign changes") {
    const MorseParameters p = test::no_params();
    for (int n : {0, 1, 2, 5, 8}) {
        int changes = 0;
        double prev = phi_wavefunction(p, n, -2.0);
        for (int i = 1; i <= 30000; ++i) {
            const double x = -2.0 + 14.0 * i / 30000.0;
            const double v = phi_wavefunction(p, n, x);
            if (prev != 0.0 && v != 0.0 && std::signbit(prev) != std::signbit(v)) ++changes;
            if (v != 0.0) prev = v;
        }
        CHECK(changes == n);
    }
}

TEST_CASE("ladder action in coordinate representation") {
    // [ (sigma + n) - (s + 1/2) e^{-x} - d/dx ] phi_n = C_{n+1} phi_{n+1},
    // with the derivative taken by central differences
    const MorseParameters p = test::no_params();
    const auto c = ladder_coefficients(p, 12);
    const double h = 1e-5;
    for (int n = 0; n <= 10; ++n) {
        for (double x : {-0.8, -0.2, 0.4, 1.1, 2.3, 4.0}) {
            const double phi = phi_wavefunction(p, n, x);
            const double dphi =
                (phi_wavefunction(p, n, x + h) - phi_wavefunction(p, n, x - h)) / (2.0 * h);
            const double raised =
                (p.sigma + n) * phi - (p.s + 0.5) * std::exp(-x) * phi - dphi;
            CHECK(raised ==
                  doctest::Approx(c[n + 1] * phi_wavefunction(p, n + 1, x)).epsilon(1e-5));
        }
    }
}

TEST_SUITE_END();
