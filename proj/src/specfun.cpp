#include "morsedyn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace morsedyn::specfun {

namespace {

void require_positive(double z, const char* who) {
    if (!(z > 0.0))
        throw std::domain_error(std::string(who) + ": argument must be positive, got " +
                                std::to_string(z));
}

// Lanczos g = 7, 9 terms (Godfrey coefficients).
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double half_log_two_pi = 0.91893853320467274178; // ln(2*pi)/2

} // namespace

double log_gamma(double z) {
    require_positive(z, "log_gamma");
    if (z == 1.0 || z == 2.0) return 0.0;
    double acc = lanczos_c[0];
    for (int k = 1; k < 9; ++k) acc += lanczos_c[k] / (z - 1.0 + k);
    const double t = z + lanczos_g - 0.5;
    return half_log_two_pi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

double digamma(double z) {
    require_positive(z, "digamma");
    // push the argument above 10, then use the asymptotic series
    double acc = 0.0;
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    // Bernoulli-number tail: sum B_2k / (2k z^2k)
    double series = inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                    inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 -
                    inv2 * (1.0 / 132.0 -
                    inv2 * (691.0 / 32760.0 -
                    inv2 * (1.0 / 12.0)))))));
    return acc + std::log(z) - 0.5 * inv - series;
}

double laguerre(int n, double alpha, double y) {
    if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
    if (!(alpha > -1.0)) throw std::domain_error("laguerre: alpha must be > -1");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - y;
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + alpha + 1.0 - y) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

SignedLog laguerre_log(int n, double alpha, double y) {
    if (n < 0) throw std::domain_error("laguerre_log: n must be >= 0");
    if (!(alpha > -1.0)) throw std::domain_error("laguerre_log: alpha must be > -1");
    if (n == 0) return {0.0, 1};
    // same recurrence, rescaled whenever the working pair grows too large
    double lm1 = 1.0, l = 1.0 + alpha - y;
    double log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + alpha + 1.0 - y) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
        const double mag = std::max(std::abs(l), std::abs(lm1));
        if (mag > 1e270) {
            l *= 1e-270;
            lm1 *= 1e-270;
            log_scale += 270.0 * 2.302585092994045684;
        } else if (mag > 0.0 && mag < 1e-270) {
            l *= 1e270;
            lm1 *= 1e270;
            log_scale -= 270.0 * 2.302585092994045684;
        }
    }
    if (l == 0.0) return {0.0, 0};
    return {std::log(std::abs(l)) + log_scale, l > 0.0 ? 1 : -1};
}

namespace {

// L_n and L_{n-1} at y with a shared scale factor, for Newton steps and
// the weight formula.
struct ScaledPair {
    double ln;      // scaled L_n
    double lnm1;    // scaled L_{n-1}
    double log_scale;
};

ScaledPair laguerre_pair_scaled(int n, double alpha, double y) {
    double lm1 = 1.0, l = 1.0 + alpha - y;
    double log_scale = 0.0;
    if (n == 0) return {1.0, 0.0, 0.0};
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + alpha + 1.0 - y) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
        const double mag = std::max(std::abs(l), std::abs(lm1));
        if (mag > 1e270) {
            l *= 1e-270;
            lm1 *= 1e-270;
            log_scale += 270.0 * 2.302585092994045684;
        } else if (mag > 0.0 && mag < 1e-270) {
            l *= 1e270;
            lm1 *= 1e270;
            log_scale -= 270.0 * 2.302585092994045684;
        }
    }
    return {l, lm1, log_scale};
}

} // namespace

QuadratureRule gauss_laguerre(int npoints, double exponent) {
    if (npoints < 1) throw std::domain_error("gauss_laguerre: npoints must be >= 1");
    if (!(exponent > -1.0))
        throw std::domain_error("gauss_laguerre: exponent must be > -1");

    const int n = npoints;
    const double beta = exponent;

    // Jacobi matrix of the recurrence: diag 2k+beta+1, offdiag sqrt(k(k+beta))
    std::vector<double> diag(n), off(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + beta + 1.0;
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + beta));

    const lapack_int info = LAPACKE_dsterf(n, diag.data(), off.data());
    if (info != 0)
        throw std::runtime_error("gauss_laguerre: eigenvalue iteration failed, info=" +
                                 std::to_string(info));

    QuadratureRule rule;
    rule.exponent = beta;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.log_weights.resize(n);

    const double log_norm =
        log_gamma(n + beta + 1.0) - log_gamma(n + 1.0) - 2.0 * std::log(n + 1.0);

    for (int i = 0; i < n; ++i) {
        double y = diag[i];
        // Newton polish on L_n(y) = 0; y L_n' = n L_n - (n+beta) L_{n-1}
        for (int it = 0; it < 3; ++it) {
            const ScaledPair p = laguerre_pair_scaled(n, beta, y);
            const double denom = n * p.ln - (n + beta) * p.lnm1;
            if (denom == 0.0) break;
            const double step = -y * p.ln / denom;
            if (!std::isfinite(step)) break;
            y += std::clamp(step, -0.5, 0.5);
            if (std::abs(step) < 1e-15 * y) break;
        }
        rule.nodes[i] = y;
        // w_i = Gamma(n+beta+1)/(n! (n+1)^2) * y_i / L_{n+1}(y_i)^2
        const ScaledPair p = laguerre_pair_scaled(n + 1, beta, y);
        const double log_l = std::log(std::abs(p.ln)) + p.log_scale;
        const double log_w = log_norm + std::log(y) - 2.0 * log_l;
        rule.log_weights[i] = log_w;
        rule.weights[i] = std::exp(log_w);
    }

    // guard against a failed polish disturbing the ordering
    for (int i = 1; i < n; ++i)
        if (!(rule.nodes[i] > rule.nodes[i - 1]))
            throw std::runtime_error("gauss_laguerre: nodes not strictly increasing");

    return rule;
}

} // namespace morsedyn::specfun
