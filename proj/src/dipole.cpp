#include "morsedyn/dipole.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "morsedyn/parallel.hpp"
#include "morsedyn/specfun.hpp"

namespace morsedyn {

double DipoleModel::slope_sum() const {
    double s = 0.0;
    for (const DipoleTerm& t : terms) s += t.a - t.gamma * t.d;
    return s;
}

double DipoleModel::value(double x) const {
    double v = 0.0;
    for (const DipoleTerm& t : terms) v += (t.a * x + t.d) * std::exp(-t.gamma * x);
    return v;
}

DipoleSamples load_dipole_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dipole sample file: " + path);
    DipoleSamples s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            double v;
            if (ls >> key >> v && key == "equilibrium_nm") s.equilibrium_nm = v;
            continue;
        }
        std::istringstream ls(line);
        double r, mu;
        if (!(ls >> r >> mu))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected two columns (nm, Debye)");
        if (!s.separation_nm.empty() && r <= s.separation_nm.back())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": separations must be strictly increasing");
        s.separation_nm.push_back(r);
        s.dipole_D.push_back(mu);
    }
    if (s.separation_nm.size() < 2)
        throw std::runtime_error(path + ": needs at least two sample rows");
    return s;
}

std::pair<double, double> seed_elements(const MorseParameters& p, double gamma) {
    if (!(p.sigma > 0.0)) throw std::domain_error("seed_elements: sigma must be positive");
    const double arg = 2.0 * p.sigma + gamma;
    if (!(arg > 0.0))
        throw std::domain_error("seed_elements: 2*sigma + gamma must be positive");
    const double two_s1 = 2.0 * p.s + 1.0;
    const double exp00 = std::exp(specfun::log_gamma(arg) - specfun::log_gamma(2.0 * p.sigma) -
                                  gamma * std::log(two_s1));
    const double xexp00 = exp00 * (std::log(two_s1) - specfun::digamma(arg));
    return {xexp00, exp00};
}

namespace {

// Error-free transforms for the compensated recurrence mode.
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - bb) + (b - (s - bb));
}

// [c1*v1 + c2*v2 + v3] / div with the products and sums compensated
inline double combine_compensated(double c1, double v1, double c2, double v2, double v3,
                                  double div) {
    double p1, e1, p2, e2, s1, e3, s2, e4;
    two_prod(c1, v1, p1, e1);
    two_prod(c2, v2, p2, e2);
    two_sum(p1, p2, s1, e3);
    two_sum(s1, v3, s2, e4);
    return (s2 + (e1 + e2 + e3 + e4)) / div;
}

void check_symmetry(const Matrix& m, double gamma, const char* what) {
    const double worst = max_asymmetry(m);
    if (worst > 1e-10)
        throw RecurrenceError(std::string(what) + " recurrence drifted from symmetry (gamma=" +
                                  std::to_string(gamma) + ", worst relative deviation " +
                                  std::to_string(worst) + ")",
                              worst);
}

} // namespace

Matrix build_exp_matrix(const MorseParameters& p, double gamma, int N, Summation mode) {
    if (N < 1) throw std::domain_error("build_exp_matrix: N must be >= 1");
    const auto [xexp00, exp00] = seed_elements(p, gamma);
    (void)xexp00;
    const std::vector<double> c = ladder_coefficients(p, N + 1);

    // row n holds <phi_m| e^{-gamma X} |phi_n> for m = 0..N; the march runs
    // row to row, entries within a row are independent
    Matrix e(N + 1, N + 1);

    // edge row/column from the single-index recurrence off the seed
    std::vector<double> edge(N + 1);
    edge[0] = exp00;
    for (int n = 0; n < N; ++n) edge[n + 1] = (n - gamma) * edge[n] / c[n + 1];
    for (int m = 0; m <= N; ++m) e(0, m) = edge[m];

    const bool par = parallel::enabled() && N >= 512;
    const bool comp = mode == Summation::compensated;
    for (int n = 0; n < N; ++n) {
        const double* prev = e.row(n);
        double* next = e.row(n + 1);
        next[0] = edge[n + 1];
        const double cn1 = c[n + 1];
#pragma omp parallel for schedule(static) if (par)
        for (int m = 1; m <= N; ++m) {
            if (comp)
                next[m] = combine_compensated(c[m], prev[m - 1], n - m - gamma, prev[m], 0.0,
                                              cn1);
            else
                next[m] = (c[m] * prev[m - 1] + (n - m - gamma) * prev[m]) / cn1;
        }
    }

    check_symmetry(e, gamma, "e^{-gamma X}");
    return e;
}

Matrix build_xexp_matrix(const MorseParameters& p, double gamma, int N,
                         const Matrix& exp_matrix, Summation mode) {
    if (N < 1) throw std::domain_error("build_xexp_matrix: N must be >= 1");
    if (exp_matrix.rows() != N + 1 || exp_matrix.cols() != N + 1)
        throw std::invalid_argument("build_xexp_matrix: exp_matrix size mismatch");
    const auto [xexp00, exp00] = seed_elements(p, gamma);
    if (std::abs(exp_matrix(0, 0) - exp00) > 1e-12 * std::abs(exp00))
        throw std::invalid_argument("build_xexp_matrix: exp_matrix built for another gamma");
    const std::vector<double> c = ladder_coefficients(p, N + 1);

    Matrix xe(N + 1, N + 1);

    std::vector<double> edge(N + 1);
    edge[0] = xexp00;
    for (int n = 0; n < N; ++n)
        edge[n + 1] = ((n - gamma) * edge[n] + exp_matrix(n, 0)) / c[n + 1];
    for (int m = 0; m <= N; ++m) xe(0, m) = edge[m];

    const bool par = parallel::enabled() && N >= 512;
    const bool comp = mode == Summation::compensated;
    for (int n = 0; n < N; ++n) {
        const double* prev = xe.row(n);
        const double* eprev = exp_matrix.row(n);
        double* next = xe.row(n + 1);
        next[0] = edge[n + 1];
        const double cn1 = c[n + 1];
#pragma omp parallel for schedule(static) if (par)
        for (int m = 1; m <= N; ++m) {
            if (comp)
                next[m] = combine_compensated(c[m], prev[m - 1], n - m - gamma, prev[m],
                                              eprev[m], cn1);
            else
                next[m] =
                    ((n - m - gamma) * prev[m] + c[m] * prev[m - 1] + eprev[m]) / cn1;
        }
    }

    check_symmetry(xe, gamma, "X e^{-gamma X}");
    return xe;
}

Matrix assemble_mu(const MorseParameters& p, const DipoleModel& model, int N,
                   Summation mode) {
    if (model.terms.empty()) throw std::invalid_argument("assemble_mu: empty dipole model");
    Matrix mu(N + 1, N + 1);
    const std::size_t total = static_cast<std::size_t>(N + 1) * (N + 1);
    for (const DipoleTerm& t : model.terms) {
        if (t.a == 0.0 && t.d == 0.0) continue;
        const Matrix e = build_exp_matrix(p, t.gamma, N, mode);
        if (t.a != 0.0) {
            const Matrix xe = build_xexp_matrix(p, t.gamma, N, e, mode);
            const double* src = xe.data();
            double* dst = mu.data();
            for (std::size_t i = 0; i < total; ++i) dst[i] += t.a * src[i];
        }
        if (t.d != 0.0) {
            const double* src = e.data();
            double* dst = mu.data();
            for (std::size_t i = 0; i < total; ++i) dst[i] += t.d * src[i];
        }
    }
    return mu;
}

} // namespace morsedyn
