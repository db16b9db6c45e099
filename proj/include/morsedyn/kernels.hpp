#pragma once

#include <complex>

#include "morsedyn/matrix.hpp"

// Data-parallel kernels. Each has a serial reference implementation and an
// OpenMP version producing bitwise-identical results (per-entry arithmetic
// is the same scalar code; threads write disjoint entries). The unsuffixed
// entry points dispatch on parallel::enabled() and problem size.
namespace morsedyn::kernels {

using cplx = std::complex<double>;

/// z = S b where S is real square (symmetric by convention) and b complex.
void sym_matvec_serial(const Matrix& s, const cplx* b, cplx* z);
void sym_matvec_omp(const Matrix& s, const cplx* b, cplx* z);
void sym_matvec(const Matrix& s, const cplx* b, cplx* z);

/// V^T A V for square A (n x n) and V (n x k).
Matrix basis_transform_serial(const Matrix& a, const Matrix& v);
Matrix basis_transform_omp(const Matrix& a, const Matrix& v);
Matrix basis_transform(const Matrix& a, const Matrix& v);

/// Gram matrix V^T V.
Matrix gram_serial(const Matrix& v);
Matrix gram_omp(const Matrix& v);
Matrix gram(const Matrix& v);

} // namespace morsedyn::kernels
