#pragma once

#include <complex>
#include <span>
#include <vector>

#include "morsedyn/matrix.hpp"
#include "morsedyn/pulse.hpp"
#include "morsedyn/spectral.hpp"

namespace morsedyn {

using cplx = std::complex<double>;

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-9;
    double output_stride = 1.0;  // sample spacing, units of T

    enum class Method { dop853, dopri5 };
    Method method = Method::dop853;

    // `direct` integrates the equation of motion as written; `rotated`
    // factors out the free phases e^{-i kappa E_n t} analytically and is
    // much faster between and under slowly varying drive. Populations from
    // the two must agree to integrator accuracy.
    enum class Frame { direct, rotated };
    Frame frame = Frame::direct;

    long max_steps = 400000000L;
    double initial_step = 0.0;  // 0 = automatic
    bool fixed_step = false;    // step-size control off (order tests)
};

struct TrajectoryRecord {
    std::vector<double> times;
    Matrix populations;                // sample x state, |b_n|^2
    std::vector<double> dissociation;  // P(t)
    std::vector<double> norm_drift;    // |1 - sum |b|^2|
    std::vector<cplx> final_state;     // coefficients at t_end (lab frame)
    double max_norm_drift = 0.0;
    long n_steps = 0, n_accepted = 0, n_rejected = 0, n_rhs = 0;

    /// P at time t from the recorded samples (nearest sample at or before t).
    double dissociation_at(double t) const;
};

/// Right-hand side of the coupled equations in the reduced eigenbasis:
/// db_n/dt = -i (2 pi/(2s+1)) [E_n b_n - field(t) (mu b)_n].
void schrodinger_rhs(const ReducedSystem& sys, const PulseSequence& drive, double t,
                     const cplx* b, cplx* dbdt);

/// 1 - sum of bound populations, clamped to [0,1].
double dissociation_probability(std::span<const cplx> b, int n_bound);

TrajectoryRecord propagate(const ReducedSystem& sys, const PulseSequence& drive, double t0,
                           double t1, const std::vector<cplx>& initial,
                           const IntegratorOptions& opts = {});

/// Start from a single eigenstate.
TrajectoryRecord propagate(const ReducedSystem& sys, const PulseSequence& drive, double t0,
                           double t1, int initial_state, const IntegratorOptions& opts = {});

} // namespace morsedyn
