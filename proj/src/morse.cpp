#include "morsedyn/morse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "morsedyn/constants.hpp"
#include "morsedyn/specfun.hpp"

namespace morsedyn {

double MorseParameters::period_s() const { return 2.0 * constants::pi / omega0; }

MorseParameters derive_params(double mass_u, double well_depth_eV, double range_per_nm) {
    if (!(mass_u > 0.0) || !(well_depth_eV > 0.0) || !(range_per_nm > 0.0))
        throw std::domain_error("derive_params: mass, depth and range must be positive");

    const double m = mass_u * constants::atomic_mass_kg;
    const double d0 = well_depth_eV * constants::electron_volt_J;
    const double alpha = range_per_nm * 1e9;  // 1/m

    MorseParameters p;
    p.mass_u = mass_u;
    p.well_depth_eV = well_depth_eV;
    p.range_per_nm = range_per_nm;
    p.omega0 = alpha * std::sqrt(2.0 * d0 / m);
    p.s = std::sqrt(2.0 * m * d0) / (constants::hbar_Js * alpha) - 0.5;
    if (!(p.s > 0.0))
        throw std::domain_error("derive_params: well too shallow, no bound state (s <= 0)");
    p.sigma = p.s - std::floor(p.s);
    p.n_bound = static_cast<int>(std::floor(p.s)) + 1;
    return p;
}

double bound_energy(const MorseParameters& p, int m) {
    if (m < 0 || m > p.bound_top())
        throw std::domain_error("bound_energy: level " + std::to_string(m) +
                                " outside bound range 0.." + std::to_string(p.bound_top()));
    const double d = p.s - m;
    return -d * d;
}

std::vector<double> ladder_coefficients(const MorseParameters& p, int N) {
    if (N < 1) throw std::domain_error("ladder_coefficients: N must be >= 1");
    std::vector<double> c(N + 1);
    c[0] = 0.0;
    for (int k = 1; k <= N; ++k) c[k] = std::sqrt(k * (k + 2.0 * p.sigma - 1.0));
    return c;
}

TridiagonalMatrix h0_matrix(const MorseParameters& p, int N) {
    const int top = p.bound_top();
    if (N < top + 2)
        throw std::domain_error("h0_matrix: N must be at least [s]+2 = " +
                                std::to_string(top + 2));
    const std::vector<double> c = ladder_coefficients(p, N + 1);
    TridiagonalMatrix h;
    h.diag.resize(N + 1);
    h.offdiag.resize(N);
    const double s2 = p.s * p.s;
    for (int n = 0; n <= N; ++n) {
        const double dm = n - top;
        h.diag[n] = c[n] * c[n] - s2 + dm * dm;
    }
    for (int n = 0; n < N; ++n) h.offdiag[n] = (top - n) * c[n + 1];
    return h;
}

double phi_wavefunction(const MorseParameters& p, int n, double x) {
    if (n < 0) throw std::domain_error("phi_wavefunction: n must be >= 0");
    if (!(p.sigma > 0.0))
        throw std::domain_error("phi_wavefunction: sigma must be positive");
    const double y = (2.0 * p.s + 1.0) * std::exp(-x);
    const double log_norm =
        0.5 * (specfun::log_gamma(n + 1.0) - specfun::log_gamma(2.0 * p.sigma + n));
    const specfun::SignedLog lag = specfun::laguerre_log(n, 2.0 * p.sigma - 1.0, y);
    if (lag.sign == 0) return 0.0;
    const double log_mag = log_norm + p.sigma * std::log(y) - 0.5 * y + lag.log_abs;
    return lag.sign * std::exp(log_mag);
}

} // namespace morsedyn
