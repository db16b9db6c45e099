#include "morsedyn/kernels.hpp"

#include <cmath>

#include "morsedyn/parallel.hpp"

namespace morsedyn {

double max_abs(const Matrix& m) {
    double w = 0.0;
    const double* p = m.data();
    const std::size_t n = static_cast<std::size_t>(m.rows()) * m.cols();
    for (std::size_t i = 0; i < n; ++i) w = std::max(w, std::abs(p[i]));
    return w;
}

double max_asymmetry(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double dev =
                std::abs(m(i, j) - m(j, i)) / std::max(1.0, std::abs(m(i, j)));
            worst = std::max(worst, dev);
        }
    return worst;
}

void symmetrize(Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
}

} // namespace morsedyn

namespace morsedyn::kernels {

namespace {

inline void matvec_row(const Matrix& s, const cplx* b, cplx* z, int i) {
    const double* row = s.row(i);
    const int n = s.cols();
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
        re += row[j] * b[j].real();
        im += row[j] * b[j].imag();
    }
    z[i] = {re, im};
}

// rows [i0, i1) of T = A V
inline void product_rows(const Matrix& a, const Matrix& v, Matrix& t, int i0, int i1) {
    const int n = a.cols(), k = v.cols();
    for (int i = i0; i < i1; ++i) {
        double* ti = t.row(i);
        for (int l = 0; l < n; ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            const double* vl = v.row(l);
            for (int j = 0; j < k; ++j) ti[j] += ail * vl[j];
        }
    }
}

// rows [i0, i1) of R = V^T T
inline void congruence_rows(const Matrix& v, const Matrix& t, Matrix& r, int i0, int i1) {
    const int n = v.rows(), k = v.cols();
    for (int i = i0; i < i1; ++i) {
        double* ri = r.row(i);
        for (int l = 0; l < n; ++l) {
            const double vli = v(l, i);
            if (vli == 0.0) continue;
            const double* tl = t.row(l);
            for (int j = 0; j < k; ++j) ri[j] += vli * tl[j];
        }
    }
}

inline void gram_rows(const Matrix& v, Matrix& g, int i0, int i1) {
    const int n = v.rows(), k = v.cols();
    for (int i = i0; i < i1; ++i) {
        double* gi = g.row(i);
        for (int l = 0; l < n; ++l) {
            const double vli = v(l, i);
            if (vli == 0.0) continue;
            const double* vl = v.row(l);
            for (int j = 0; j < k; ++j) gi[j] += vli * vl[j];
        }
    }
}

constexpr int kMatvecParallelCutoff = 160;

} // namespace

void sym_matvec_serial(const Matrix& s, const cplx* b, cplx* z) {
    for (int i = 0; i < s.rows(); ++i) matvec_row(s, b, z, i);
}

void sym_matvec_omp(const Matrix& s, const cplx* b, cplx* z) {
    const int n = s.rows();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matvec_row(s, b, z, i);
}

void sym_matvec(const Matrix& s, const cplx* b, cplx* z) {
    if (parallel::enabled() && s.rows() >= kMatvecParallelCutoff)
        sym_matvec_omp(s, b, z);
    else
        sym_matvec_serial(s, b, z);
}

Matrix basis_transform_serial(const Matrix& a, const Matrix& v) {
    Matrix t(a.rows(), v.cols());
    product_rows(a, v, t, 0, a.rows());
    Matrix r(v.cols(), v.cols());
    congruence_rows(v, t, r, 0, v.cols());
    return r;
}

Matrix basis_transform_omp(const Matrix& a, const Matrix& v) {
    Matrix t(a.rows(), v.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows(); ++i) product_rows(a, v, t, i, i + 1);
    Matrix r(v.cols(), v.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < v.cols(); ++i) congruence_rows(v, t, r, i, i + 1);
    return r;
}

Matrix basis_transform(const Matrix& a, const Matrix& v) {
    if (parallel::enabled() && a.rows() >= 64) return basis_transform_omp(a, v);
    return basis_transform_serial(a, v);
}

Matrix gram_serial(const Matrix& v) {
    Matrix g(v.cols(), v.cols());
    gram_rows(v, g, 0, v.cols());
    return g;
}

Matrix gram_omp(const Matrix& v) {
    Matrix g(v.cols(), v.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < v.cols(); ++i) gram_rows(v, g, i, i + 1);
    return g;
}

Matrix gram(const Matrix& v) {
    if (parallel::enabled() && v.rows() >= 64) return gram_omp(v);
    return gram_serial(v);
}

} // namespace morsedyn::kernels
