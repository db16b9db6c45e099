#include "morsedyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "morsedyn/parallel.hpp"
#include "morsedyn/specfun.hpp"

namespace morsedyn::oracle {

namespace {

double log_basis_norm(const MorseParameters& p, int n) {
    return 0.5 * (specfun::log_gamma(n + 1.0) - specfun::log_gamma(2.0 * p.sigma + n));
}

// single quadrature pass at a given node count
double integrate(const MorseParameters& p, int m, int n, const DipoleTerm& term,
                 int npoints) {
    const double two_s1 = 2.0 * p.s + 1.0;
    const double alpha_lag = 2.0 * p.sigma - 1.0;
    const specfun::QuadratureRule rule =
        specfun::gauss_laguerre(npoints, 2.0 * p.sigma + term.gamma - 1.0);

    const double log_pref =
        log_basis_norm(p, m) + log_basis_norm(p, n) - term.gamma * std::log(two_s1);
    const double log_2s1 = std::log(two_s1);

    double sum = 0.0, carry = 0.0;  // Kahan
    for (int k = 0; k < rule.size(); ++k) {
        const double y = rule.nodes[k];
        const specfun::SignedLog lm = specfun::laguerre_log(m, alpha_lag, y);
        const specfun::SignedLog ln = specfun::laguerre_log(n, alpha_lag, y);
        if (lm.sign == 0 || ln.sign == 0) continue;
        const double base = lm.sign * ln.sign *
                            std::exp(rule.log_weights[k] + lm.log_abs + ln.log_abs + log_pref);
        const double v = base * (term.d + term.a * (log_2s1 - std::log(y)));
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

} // namespace

double oracle_element(const MorseParameters& p, int m, int n, const DipoleTerm& term) {
    if (m < 0 || n < 0 || m > 200 || n > 200)
        throw std::domain_error("oracle_element: indices must lie in 0..200");
    if (!(2.0 * p.sigma + term.gamma > 0.0))
        throw std::domain_error("oracle_element: 2*sigma + gamma must be positive");

    int npts = std::max(m + n + 40, 48);
    double prev = integrate(p, m, n, term, npts);
    const double scale_floor = 1e-6 * (std::abs(term.a) + std::abs(term.d));
    for (int refine = 0; refine < 3; ++refine) {
        npts *= 2;
        const double next = integrate(p, m, n, term, npts);
        const double scale =
            std::max({std::abs(prev), std::abs(next), scale_floor});
        if (std::abs(next - prev) <= 1e-8 * scale) return next;
        prev = next;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "oracle_element(%d,%d): quadrature not converged at %d nodes", m, n, npts);
    throw OracleError(buf);
}

double oracle_mu_element(const MorseParameters& p, int m, int n, const DipoleModel& model) {
    double v = 0.0;
    for (const DipoleTerm& t : model.terms) v += oracle_element(p, m, n, t);
    return v;
}

Matrix oracle_gram(const MorseParameters& p, int K) {
    if (K < 0 || K > 60) throw std::domain_error("oracle_gram: K must lie in 0..60");
    const double alpha_lag = 2.0 * p.sigma - 1.0;
    const int npts = K + 24;
    const specfun::QuadratureRule rule = specfun::gauss_laguerre(npts, alpha_lag);

    std::vector<double> log_norm(K + 1);
    for (int i = 0; i <= K; ++i) log_norm[i] = log_basis_norm(p, i);

    Matrix g(K + 1, K + 1);
    std::vector<double> lag(K + 1), t(K + 1);
    for (int k = 0; k < rule.size(); ++k) {
        const double y = rule.nodes[k];
        lag[0] = 1.0;
        if (K >= 1) lag[1] = 1.0 + alpha_lag - y;
        for (int i = 1; i < K; ++i)
            lag[i + 1] =
                ((2.0 * i + alpha_lag + 1.0 - y) * lag[i] - (i + alpha_lag) * lag[i - 1]) /
                (i + 1.0);
        for (int i = 0; i <= K; ++i) {
            if (lag[i] == 0.0) {
                t[i] = 0.0;
                continue;
            }
            t[i] = (lag[i] > 0 ? 1.0 : -1.0) *
                   std::exp(0.5 * rule.log_weights[k] + log_norm[i] + std::log(std::abs(lag[i])));
        }
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= K; ++j) g(i, j) += t[i] * t[j];
    }
    return g;
}

std::string OracleReport::to_text() const {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "dipole matrix certification\n  samples: %zu  threshold: %.3e\n",
                  samples.size(), threshold);
    out += buf;
    std::snprintf(buf, sizeof buf, "  worst deviation: %.6e at (m,n) = (%d, %d)\n",
                  worst_deviation, worst_m, worst_n);
    out += buf;
    out += pass ? "  result: PASS\n" : "  result: FAIL\n";
    out += "     m    n        recurrence         quadrature          deviation\n";
    for (const Sample& s : samples) {
        std::snprintf(buf, sizeof buf, "  %4d %4d %18.10e %18.10e %14.6e\n", s.m, s.n,
                      s.recurrence, s.quadrature, s.deviation);
        out += buf;
    }
    return out;
}

OracleReport certify_matrix(const MorseParameters& p, const DipoleModel& model,
                            const Matrix& mu, int sample_count, double threshold,
                            std::uint64_t seed) {
    const int cap = std::min(mu.rows() - 1, 200);
    double model_scale = 0.0;
    for (const DipoleTerm& t : model.terms) model_scale += std::abs(t.a) + std::abs(t.d);
    const double floor = 1e-6 * std::max(model_scale, 1e-30);

    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k + 2 <= cap; k += 5) {
        pairs.emplace_back(k, k);
        pairs.emplace_back(k, k + 1);
        pairs.emplace_back(k, k + 2);
        if (static_cast<int>(pairs.size()) >= 36) break;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> anywhere(0, cap);
    std::uniform_int_distribution<int> band(-6, 6);
    for (int i = 0; i < sample_count; ++i) {
        int m = anywhere(rng);
        int n;
        if (i % 10 < 7) {
            n = std::clamp(m + band(rng), 0, cap);
        } else {
            n = anywhere(rng);
        }
        pairs.emplace_back(m, n);
    }

    OracleReport rep;
    rep.threshold = threshold;
    rep.samples.resize(pairs.size());
    const int total = static_cast<int>(pairs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel::enabled())
    for (int i = 0; i < total; ++i) {
        try {
            const auto [m, n] = pairs[i];
            OracleReport::Sample s;
            s.m = m;
            s.n = n;
            s.recurrence = mu(m, n);
            s.quadrature = oracle_mu_element(p, m, n, model);
            s.deviation = std::abs(s.recurrence - s.quadrature) /
                          std::max(std::abs(s.quadrature), floor);
            rep.samples[i] = s;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const OracleReport::Sample& s : rep.samples) {
        if (s.deviation > rep.worst_deviation) {
            rep.worst_deviation = s.deviation;
            rep.worst_m = s.m;
            rep.worst_n = s.n;
        }
    }
    rep.pass = rep.worst_deviation < threshold;
    return rep;
}

OracleReport certify(const MorseParameters& p, const DipoleModel& model, int N,
                     int sample_count, double threshold, std::uint64_t seed) {
    const Matrix mu = assemble_mu(p, model, N);
    return certify_matrix(p, model, mu, sample_count, threshold, seed);
}

} // namespace morsedyn::oracle
