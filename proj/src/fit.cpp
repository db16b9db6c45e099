#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "morsedyn/constants.hpp"
#include "morsedyn/dipole.hpp"

// Damped (Levenberg-Marquardt) least squares for the exponential-polynomial
// dipole form. The amplitudes enter linearly, so initial decay rates are
// picked by scanning a small gamma grid with a linear solve, then the full
// parameter set is refined.
namespace morsedyn {

namespace {

struct Problem {
    std::vector<double> x;   // dimensionless coordinate
    std::vector<double> mu;  // Debye
    int n_terms = 0;
    bool fix_d = true;

    int n_params() const { return n_terms * (fix_d ? 2 : 3); }

    // parameter vector layout per term: [A, gamma] or [A, D, gamma]
    double model(const std::vector<double>& q, double xi) const {
        double v = 0.0;
        const int stride = fix_d ? 2 : 3;
        for (int t = 0; t < n_terms; ++t) {
            const double a = q[t * stride];
            const double d = fix_d ? 0.0 : q[t * stride + 1];
            const double g = q[t * stride + (fix_d ? 1 : 2)];
            v += (a * xi + d) * std::exp(-g * xi);
        }
        return v;
    }

    void jacobian_row(const std::vector<double>& q, double xi, double* jrow) const {
        const int stride = fix_d ? 2 : 3;
        for (int t = 0; t < n_terms; ++t) {
            const double a = q[t * stride];
            const double d = fix_d ? 0.0 : q[t * stride + 1];
            const double g = q[t * stride + (fix_d ? 1 : 2)];
            const double e = std::exp(-g * xi);
            jrow[t * stride] = xi * e;
            if (!fix_d) jrow[t * stride + 1] = e;
            jrow[t * stride + (fix_d ? 1 : 2)] = -(a * xi + d) * xi * e;
        }
    }

    double cost(const std::vector<double>& q) const {
        double c = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double r = mu[j] - model(q, x[j]);
            c += r * r;
        }
        return c;
    }
};

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& out) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (int k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * out[k];
        out[r] = s / a[r * n + r];
    }
    return true;
}

// Best-fitting amplitudes for fixed decay rates (the linear subproblem).
double linear_amplitudes(const Problem& prob, const std::vector<double>& gammas,
                         std::vector<double>& amps) {
    const int nb = prob.n_terms * (prob.fix_d ? 1 : 2);
    std::vector<double> ata(nb * nb, 0.0);
    std::vector<double> atb(nb, 0.0);
    std::vector<double> basis(nb);
    for (std::size_t j = 0; j < prob.x.size(); ++j) {
        const double xi = prob.x[j];
        for (int t = 0; t < prob.n_terms; ++t) {
            const double e = std::exp(-gammas[t] * xi);
            if (prob.fix_d) {
                basis[t] = xi * e;
            } else {
                basis[2 * t] = xi * e;
                basis[2 * t + 1] = e;
            }
        }
        for (int r = 0; r < nb; ++r) {
            atb[r] += basis[r] * prob.mu[j];
            for (int c = 0; c < nb; ++c) ata[r * nb + c] += basis[r] * basis[c];
        }
    }
    for (int r = 0; r < nb; ++r) ata[r * nb + r] *= 1.0 + 1e-12;
    if (!solve_dense(ata, atb, nb, amps)) {
        amps.assign(nb, 0.0);
        return std::numeric_limits<double>::infinity();
    }
    std::vector<double> q(prob.n_params(), 0.0);
    const int stride = prob.fix_d ? 2 : 3;
    for (int t = 0; t < prob.n_terms; ++t) {
        q[t * stride] = amps[prob.fix_d ? t : 2 * t];
        if (!prob.fix_d) q[t * stride + 1] = amps[2 * t + 1];
        q[t * stride + (prob.fix_d ? 1 : 2)] = gammas[t];
    }
    return prob.cost(q);
}

std::vector<double> initial_guess(const Problem& prob) {
    const std::vector<double> grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    std::vector<double> best_gammas(prob.n_terms, 0.5);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> amps;

    std::vector<int> idx(prob.n_terms, 0);
    // exhaustive over non-decreasing gamma tuples; fine for n_terms <= 3
    const int g = static_cast<int>(grid.size());
    auto advance = [&]() {
        for (int t = prob.n_terms - 1; t >= 0; --t) {
            if (++idx[t] < g) {
                for (int u = t + 1; u < prob.n_terms; ++u) idx[u] = idx[t];
                return true;
            }
        }
        return false;
    };
    do {
        std::vector<double> gammas(prob.n_terms);
        for (int t = 0; t < prob.n_terms; ++t) gammas[t] = grid[idx[t]];
        // nudge duplicates apart so the linear system stays regular
        for (int t = 1; t < prob.n_terms; ++t)
            if (gammas[t] <= gammas[t - 1]) gammas[t] = gammas[t - 1] + 0.05;
        const double c = linear_amplitudes(prob, gammas, amps);
        if (c < best_cost) {
            best_cost = c;
            best_gammas = gammas;
        }
    } while (advance());

    std::vector<double> q(prob.n_params(), 0.0);
    linear_amplitudes(prob, best_gammas, amps);
    const int stride = prob.fix_d ? 2 : 3;
    for (int t = 0; t < prob.n_terms; ++t) {
        q[t * stride] = amps[prob.fix_d ? t : 2 * t];
        if (!prob.fix_d) q[t * stride + 1] = amps[2 * t + 1];
        q[t * stride + (prob.fix_d ? 1 : 2)] = best_gammas[t];
    }
    return q;
}

} // namespace

DipoleFit fit_dipole(const DipoleSamples& samples, const MorseParameters& p, int n_terms,
                     bool fix_d_zero) {
    if (n_terms < 1) throw std::domain_error("fit_dipole: n_terms must be >= 1");
    if (!(samples.equilibrium_nm > 0.0))
        throw std::invalid_argument("fit_dipole: equilibrium separation not set");

    Problem prob;
    prob.n_terms = n_terms;
    prob.fix_d = fix_d_zero;
    const std::size_t m = samples.separation_nm.size();
    if (static_cast<int>(m) < 2 * prob.n_params())
        throw std::invalid_argument("fit_dipole: need at least " +
                                    std::to_string(2 * prob.n_params()) + " samples");
    prob.x.resize(m);
    prob.mu = samples.dipole_D;
    for (std::size_t j = 0; j < m; ++j)
        prob.x[j] = p.range_per_nm * (samples.separation_nm[j] - samples.equilibrium_nm);

    std::vector<double> q = initial_guess(prob);
    const int np = prob.n_params();
    double cost = prob.cost(q);
    double lambda = 1e-3;
    int iter = 0;
    const int max_iter = 400;
    bool converged = false;

    std::vector<double> jrow(np), jtj(np * np), jtr(np), trial, delta;
    for (; iter < max_iter; ++iter) {
        std::fill(jtj.begin(), jtj.end(), 0.0);
        std::fill(jtr.begin(), jtr.end(), 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            prob.jacobian_row(q, prob.x[j], jrow.data());
            const double r = prob.mu[j] - prob.model(q, prob.x[j]);
            for (int a = 0; a < np; ++a) {
                jtr[a] += jrow[a] * r;
                for (int b = 0; b < np; ++b) jtj[a * np + b] += jrow[a] * jrow[b];
            }
        }
        double diag_max = 0.0;
        for (int a = 0; a < np; ++a) diag_max = std::max(diag_max, jtj[a * np + a]);
        if (diag_max <= 0.0)
            throw FitError("fit_dipole: singular Jacobian", std::sqrt(cost / m));

        bool stepped = false;
        for (int attempt = 0; attempt < 40 && !stepped; ++attempt) {
            std::vector<double> damped = jtj;
            for (int a = 0; a < np; ++a)
                damped[a * np + a] += lambda * std::max(jtj[a * np + a], 1e-12 * diag_max);
            if (!solve_dense(damped, jtr, np, delta)) {
                lambda *= 10.0;
                continue;
            }
            trial = q;
            for (int a = 0; a < np; ++a) trial[a] += delta[a];
            const double trial_cost = prob.cost(trial);
            if (trial_cost <= cost) {
                double step = 0.0, scale = 0.0;
                for (int a = 0; a < np; ++a) {
                    step += delta[a] * delta[a];
                    scale += trial[a] * trial[a];
                }
                q = trial;
                const double improvement = cost - trial_cost;
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-14);
                stepped = true;
                if (step <= 1e-24 * (scale + 1e-12) || improvement <= 1e-18 * (cost + 1e-18))
                    converged = true;
            } else {
                lambda *= 10.0;
                if (lambda > 1e14) break;
            }
        }
        if (converged) break;
        if (!stepped) {
            // no downhill step found: either converged at machine level or stuck
            if (cost <= 1e-20 * m || lambda > 1e14) {
                converged = true;
                break;
            }
        }
    }

    const double rms = std::sqrt(cost / m);
    if (!converged && iter >= max_iter)
        throw FitError("fit_dipole: no convergence after " + std::to_string(max_iter) +
                           " iterations (residual rms " + std::to_string(rms) + " D)",
                       rms);

    DipoleFit out;
    out.iterations = iter + 1;
    out.rms_residual = rms;
    const int stride = prob.fix_d ? 2 : 3;
    for (int t = 0; t < n_terms; ++t) {
        DipoleTerm term;
        term.a = q[t * stride];
        term.d = prob.fix_d ? 0.0 : q[t * stride + 1];
        term.gamma = q[t * stride + (prob.fix_d ? 1 : 2)];
        out.raw_terms.push_back(term);
    }

    // d mu/dX at X = 0 in Debye; effective charge = alpha * that, in Coulomb
    double slope_D = 0.0;
    for (const DipoleTerm& t : out.raw_terms) slope_D += t.a - t.gamma * t.d;
    if (slope_D == 0.0)
        throw FitError("fit_dipole: fitted slope at equilibrium is zero", rms);
    out.model.effective_charge_C =
        slope_D * constants::debye_Cm * p.range_per_nm * 1e9;
    for (const DipoleTerm& t : out.raw_terms)
        out.model.terms.push_back({t.a / slope_D, t.d / slope_D, t.gamma});
    return out;
}

} // namespace morsedyn
