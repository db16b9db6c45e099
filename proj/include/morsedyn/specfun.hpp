#pragma once

#include <vector>

namespace morsedyn::specfun {

/// ln Gamma(z) for z > 0. Lanczos approximation, relative error < 1e-13.
double log_gamma(double z);

/// Digamma psi(z) for z > 0. Upward recurrence into the asymptotic
/// regime, absolute error < 1e-12.
double digamma(double z);

/// Generalized Laguerre polynomial L_n^alpha(y) by the three-term
/// recurrence in n. Requires n >= 0, alpha > -1.
double laguerre(int n, double alpha, double y);

/// Sign and log-magnitude pair. sign is -1, 0 or +1; log_abs is
/// meaningless when sign == 0.
struct SignedLog {
    double log_abs = 0.0;
    int sign = 0;
};

/// L_n^alpha(y) in scaled form; immune to overflow for large n or y.
SignedLog laguerre_log(int n, double alpha, double y);

/// Nodes and weights integrating f against y^exponent e^{-y} on (0, inf).
/// log_weights stays finite where the plain weights underflow.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
    double exponent = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Generalized Gauss-Laguerre rule: exact for polynomials up to degree
/// 2*npoints - 1 against the weight y^exponent e^{-y}. exponent > -1.
QuadratureRule gauss_laguerre(int npoints, double exponent);

} // namespace morsedyn::specfun
