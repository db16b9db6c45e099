#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "helpers.hpp"
#include "morsedyn/constants.hpp"
#include "morsedyn/dipole.hpp"
#include "morsedyn/kernels.hpp"
#include "morsedyn/specfun.hpp"

using namespace morsedyn;

TEST_SUITE_BEGIN("dipole");

TEST_CASE("seed elements: closed forms at gamma = 0") {
    const MorseParameters p = test::params_from_s(54.54);
    const auto [xexp00, exp00] = seed_elements(p, 0.0);
    CHECK(exp00 == doctest::Approx(1.0).epsilon(1e-14));
    const double expect = std::log(2.0 * p.s + 1.0) - specfun::digamma(2.0 * p.sigma);
    CHECK(xexp00 == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("seed elements: frozen quadrature oracle values at gamma = 0.927") {
    const MorseParameters p = test::params_from_s(54.54);
    const auto [xexp00, exp00] = seed_elements(p, 0.927);
    CHECK(exp00 == doctest::Approx(0.013380781772890835428).epsilon(1e-13));
    CHECK(xexp00 == doctest::Approx(0.057188369067719081581).epsilon(1e-13));
}

TEST_CASE("seed elements: domain guard") {
    const MorseParameters p = test::params_from_s(54.54);
    CHECK_THROWS_AS(seed_elements(p, -2.0 * p.sigma), std::domain_error);
    CHECK_THROWS_AS(seed_elements(p, -1.2), std::domain_error);
}

TEST_CASE("exp matrix: gamma = 0 gives the identity exactly") {
    const MorseParameters p = test::params_from_s(54.54);
    const Matrix e = build_exp_matrix(p, 0.0, 40);
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) CHECK(e(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("matrix entries against frozen high-precision quadrature") {
    const MorseParameters p = test::params_from_s(54.54);
    const int N = 24;
    const Matrix e = build_exp_matrix(p, 0.927, N);
    const Matrix xe = build_xexp_matrix(p, 0.927, N, e);

    CHECK(e(0, 0) == doctest::Approx(0.013380781772890835).epsilon(1e-12));
    CHECK(xe(0, 0) == doctest::Approx(0.057188369067719082).epsilon(1e-12));
    CHECK(e(0, 1) == doctest::Approx(-0.011935739845953820).epsilon(1e-12));
    CHECK(xe(0, 1) == doctest::Approx(-0.038136714561810663).epsilon(1e-12));
    CHECK(e(2, 2) == doctest::Approx(0.056507863954965469).epsilon(1e-12));
    CHECK(xe(2, 2) == doctest::Approx(0.157422512487427236).epsilon(1e-12));
    CHECK(e(3, 5) == doctest::Approx(-0.0011631777347590963).epsilon(1e-11));
    CHECK(xe(3, 5) == doctest::Approx(-0.018274499918488755).epsilon(1e-11));
    CHECK(e(10, 12) == doctest::Approx(-0.0027597092144005598).epsilon(1e-11));
    CHECK(xe(10, 12) == doctest::Approx(-0.040738100645771022).epsilon(1e-11));
}

TEST_CASE("xexp entry (0,1) at gamma = 0 equals 1/C_1") {
    const MorseParameters p = test::params_from_s(54.54);
    const Matrix e = build_exp_matrix(p, 0.0, 8);
    const Matrix xe = build_xexp_matrix(p, 0.0, 8, e);
    CHECK(xe(0, 1) == doctest::Approx(1.0 / std::sqrt(1.08)).epsilon(1e-13));
}

TEST_CASE("built matrices stay symmetric") {
    const MorseParameters p = test::no_params();
    for (double gamma : {0.927, 0.87}) {
        const Matrix e = build_exp_matrix(p, gamma, 200);
        CHECK(max_asymmetry(e) < 1e-10);
        const Matrix xe = build_xexp_matrix(p, gamma, 200, e);
        CHECK(max_asymmetry(xe) < 1e-10);
    }
}

TEST_CASE("compensated mode agrees with plain arithmetic") {
    const MorseParameters p = test::no_params();
    const Matrix e0 = build_exp_matrix(p, 0.927, 120, Summation::plain);
    const Matrix e1 = build_exp_matrix(p, 0.927, 120, Summation::compensated);
    for (int i = 0; i <= 120; i += 7)
        for (int j = 0; j <= 120; j += 7)
            CHECK(e1(i, j) == doctest::Approx(e0(i, j)).epsilon(1e-11));
}

TEST_CASE("off-diagonal decay: far couplings are much smaller than near ones") {
    const MorseParameters p = test::no_params();
    const int N = 80;
    DipoleModel model;
    model.terms = {{-9.66, 0.0, 0.927}, {10.64, 0.0, 0.870}};
    const Matrix mu = assemble_mu(p, model, N);
    for (int m = 0; m <= 50; ++m) {
        double near = 0.0, far = 0.0;
        for (int k = 1; k <= 3; ++k) near = std::max(near, std::abs(mu(m, m + k)));
        for (int k = 10; k <= 20; ++k) far = std::max(far, std::abs(mu(m, m + k)));
        CHECK(far < near);
    }
}

TEST_CASE("assemble_mu is linear in the terms and a constant adds c I") {
    const MorseParameters p = test::params_from_s(54.54);
    const int N = 30;
    DipoleModel t1, t2, both;
    t1.terms = {{-9.66, 0.0, 0.927}};
    t2.terms = {{10.64, 0.0, 0.870}};
    both.terms = {t1.terms[0], t2.terms[0]};
    const Matrix m1 = assemble_mu(p, t1, N);
    const Matrix m2 = assemble_mu(p, t2, N);
    const Matrix mb = assemble_mu(p, both, N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            CHECK(mb(i, j) == doctest::Approx(m1(i, j) + m2(i, j)).epsilon(1e-12));

    DipoleModel shifted = both;
    shifted.terms.push_back({0.0, 2.5, 0.0});
    const Matrix ms = assemble_mu(p, shifted, N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            CHECK(ms(i, j) - mb(i, j) == (i == j ? 2.5 : 0.0));

    DipoleModel identity;
    identity.terms = {{0.0, 1.0, 0.0}};
    const Matrix mi = assemble_mu(p, identity, N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) CHECK(mi(i, j) == (i == j ? 1.0 : 0.0));
}

namespace {

std::filesystem::path write_synthetic_samples(double q_e_scale_D, bool header) {
    // exact model data: mu_D(X) = q_e_scale_D * (a1 X e^{-g1 X} + a2 X e^{-g2 X})
    const auto path = std::filesystem::temp_directory_path() / "morsedyn_fit_samples.dat";
    std::ofstream out(path);
    out << "# synthetic dipole curve\n";
    if (header) out << "# equilibrium_nm 0.11508\n";
    const double re = 0.11508, alpha = 27.68;
    char buf[80];
    for (int i = 0; i < 30; ++i) {
        const double r = 0.088 + 0.010 * i;
        const double x = alpha * (r - re);
        const double mu =
            q_e_scale_D * (-9.66 * x * std::exp(-0.927 * x) + 10.64 * x * std::exp(-0.870 * x));
        std::snprintf(buf, sizeof buf, "%.12f  %.12e\n", r, mu);
        out << buf;
    }
    return path;
}

} // namespace

TEST_CASE("sample loader reads columns, comments and the equilibrium directive") {
    const auto path = write_synthetic_samples(1.0, true);
    const DipoleSamples s = load_dipole_samples(path.string());
    CHECK(s.separation_nm.size() == 30);
    CHECK(s.equilibrium_nm == doctest::Approx(0.11508));
    CHECK(s.separation_nm.front() == doctest::Approx(0.088));
}

TEST_CASE("fit recovers the generating parameters from noiseless data") {
    const auto path = write_synthetic_samples(0.8676, true);
    const DipoleSamples s = load_dipole_samples(path.string());
    const MorseParameters p = test::no_params();
    const DipoleFit fit = fit_dipole(s, p, 2, true);

    REQUIRE(fit.raw_terms.size() == 2);
    // order-insensitive match
    const bool first_is_neg = fit.raw_terms[0].a < 0;
    const DipoleTerm& neg = fit.raw_terms[first_is_neg ? 0 : 1];
    const DipoleTerm& pos = fit.raw_terms[first_is_neg ? 1 : 0];
    CHECK(neg.a / 0.8676 == doctest::Approx(-9.66).epsilon(1e-6));
    CHECK(neg.gamma == doctest::Approx(0.927).epsilon(1e-6));
    CHECK(pos.a / 0.8676 == doctest::Approx(10.64).epsilon(1e-6));
    CHECK(pos.gamma == doctest::Approx(0.870).epsilon(1e-6));
    CHECK(fit.rms_residual < 1e-9);

    // q_e follows from the fitted slope: 0.98 * scale in Debye/X times alpha
    const double q_e_expect = 0.98 * 0.8676 * constants::debye_Cm * 27.68e9;
    CHECK(fit.model.effective_charge_C == doctest::Approx(q_e_expect).epsilon(1e-5));
    // dimensionless terms are slope-normalized
    CHECK(fit.model.slope_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure linear dipole collapses to a single (a=1, d=0, gamma=0) term") {
    const auto path = std::filesystem::temp_directory_path() / "morsedyn_linear.dat";
    {
        std::ofstream out(path);
        out << "# equilibrium_nm 0.11508\n";
        for (int i = 0; i < 24; ++i) {
            const double r = 0.090 + 0.012 * i;
            out << r << "  " << 2.0 * 27.68 * (r - 0.11508) << "\n";
        }
    }
    const DipoleSamples s = load_dipole_samples(path.string());
    const DipoleFit fit = fit_dipole(s, test::no_params(), 1, true);
    CHECK(fit.model.terms.size() == 1);
    CHECK(fit.model.terms[0].a == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fit.model.terms[0].d == 0.0);
    CHECK(std::abs(fit.model.terms[0].gamma) < 1e-7);
    CHECK(fit.raw_terms[0].a == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("fit error paths") {
    const auto path = write_synthetic_samples(1.0, false);
    DipoleSamples s = load_dipole_samples(path.string());
    SUBCASE("equilibrium missing") {
        CHECK_THROWS(fit_dipole(s, test::no_params(), 2, true));
    }
    SUBCASE("too few samples") {
        s.equilibrium_nm = 0.11508;
        s.separation_nm.resize(3);
        s.dipole_D.resize(3);
        CHECK_THROWS(fit_dipole(s, test::no_params(), 2, true));
    }
}

TEST_SUITE_END();
