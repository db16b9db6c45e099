#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morsedyn/matrix.hpp"
#include "morsedyn/morse.hpp"

namespace morsedyn {

/// One (a X + d) e^{-gamma X} term of the dipole expansion, dimensionless.
struct DipoleTerm {
    double a = 0.0;
    double d = 0.0;
    double gamma = 0.0;
};

struct DipoleModel {
    std::vector<DipoleTerm> terms;
    double effective_charge_C = 0.0;  // d mu/dx at equilibrium, physical units

    /// sum_i (a_i - gamma_i d_i); equals d mu/dX at X = 0 and should sit
    /// near 1 for a consistently normalized model.
    double slope_sum() const;

    /// mu(X) evaluated pointwise (diagnostics and fitting).
    double value(double x) const;
};

/// Dipole-moment samples: interatomic separation in nm against dipole in
/// Debye, plus the equilibrium separation used to define X = alpha*(r - r_e).
struct DipoleSamples {
    std::vector<double> separation_nm;
    std::vector<double> dipole_D;
    double equilibrium_nm = 0.0;
};

/// Plain-text loader: two columns (nm, Debye), '#' comments; a comment of
/// the form "# equilibrium_nm <value>" sets the equilibrium separation.
DipoleSamples load_dipole_samples(const std::string& path);

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual)
        : std::runtime_error(what), residual_rms(residual) {}
    double residual_rms;
};

/// Raised when a recurrence-built matrix drifts from symmetry.
class RecurrenceError : public std::runtime_error {
public:
    RecurrenceError(const std::string& what, double worst)
        : std::runtime_error(what), worst_deviation(worst) {}
    double worst_deviation;
};

struct DipoleFit {
    DipoleModel model;                  // dimensionless terms, q_e filled
    std::vector<DipoleTerm> raw_terms;  // amplitudes in Debye against X
    double rms_residual = 0.0;
    int iterations = 0;
};

/// Damped least-squares fit of the exponential-polynomial form to the
/// samples, in the dimensionless coordinate. The effective charge comes
/// from the fitted derivative at X = 0; the dimensionless terms are the
/// raw ones rescaled by it. Throws FitError on non-convergence.
DipoleFit fit_dipole(const DipoleSamples& samples, const MorseParameters& p,
                     int n_terms, bool fix_d_zero);

/// Ground-basis-state expectation values ( <X e^{-g X}>, <e^{-g X}> ),
/// the closed-form seeds of the matrix recurrences. Requires 2 sigma + g > 0.
std::pair<double, double> seed_elements(const MorseParameters& p, double gamma);

enum class Summation { plain, compensated };

/// Full (N+1)^2 matrix of e^{-gamma X} in the quasi-number basis, built by
/// the exact two-index recurrence marching column to column from the (0,0)
/// seed. The result is validated against its own transpose; drift beyond
/// 1e-10 (relative above unit magnitude) throws.
Matrix build_exp_matrix(const MorseParameters& p, double gamma, int N,
                        Summation mode = Summation::plain);

/// Companion matrix of X e^{-gamma X}; consumes the e^{-gamma X} matrix
/// built for the same gamma and N.
Matrix build_xexp_matrix(const MorseParameters& p, double gamma, int N,
                         const Matrix& exp_matrix, Summation mode = Summation::plain);

/// mu = sum_i a_i XExp(gamma_i) + d_i Exp(gamma_i).
Matrix assemble_mu(const MorseParameters& p, const DipoleModel& model, int N,
                   Summation mode = Summation::plain);

} // namespace morsedyn
