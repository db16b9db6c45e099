#pragma once

#include <cstddef>
#include <vector>

namespace morsedyn {

/// Dense row-major matrix of doubles. Square symmetric operators and
/// rectangular basis-vector blocks both use this type.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }
    double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const {
        return a_.data() + static_cast<std::size_t>(i) * cols_;
    }

    bool empty() const { return a_.empty(); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

double max_abs(const Matrix& m);

/// Worst symmetry deviation max_{ij} |M_ij - M_ji| / max(1, |M_ij|).
double max_asymmetry(const Matrix& m);

/// In-place (M + M^T)/2.
void symmetrize(Matrix& m);

} // namespace morsedyn
