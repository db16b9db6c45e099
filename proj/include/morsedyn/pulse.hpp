#pragma once

#include <utility>
#include <vector>

#include "morsedyn/morse.hpp"

namespace morsedyn {

/// Carrier-frequency schedule, in units of omega0. All variants reduce to a
/// piecewise-linear profile when compiled against the molecule parameters
/// and a pulse support window.
struct ChirpSchedule {
    enum class Kind { constant, linear, piecewise, ladder };
    Kind kind = Kind::constant;

    double omega = 1.0;  // constant

    double omega_start = 1.0, omega_end = 1.0;  // linear
    double t_start = 0.0, t_end = 1.0;

    std::vector<std::pair<double, double>> knots;  // piecewise (t, omega)

    int m_start = 0, m_end = 0, step = 1;  // ladder-resonant sweep
};

/// One laser pulse: distorted secant-hyperbolic envelope
/// peak / [exp((t0-t)/tau_f) + exp((t-t0)/tau_t)]-shaped, with times in
/// units of the vibration period T and the peak field physical.
struct PulseSpec {
    double peak_field_V_per_cm = 0.0;
    double tau_front = 1.0;  // tau_f
    double tau_tail = 1.0;   // tau_t
    double t_center = 0.0;   // t0
    double carrier_phase0 = 0.0;
    ChirpSchedule chirp;
};

/// (2s+1) q_e / (hbar omega0 alpha) * E: exact unit conversion of a field
/// in V/cm to the dimensionless strength.
double field_to_dimensionless(const MorseParameters& p, double q_e_C, double field_V_per_cm);

/// Transition frequency (E_{m+step} - E_m)/(2s+1) in units of omega0,
/// step 1 or 2, both levels bound.
double ladder_resonance(const MorseParameters& p, int m, int step);

/// Window outside which the envelope falls below `level` times its peak.
std::pair<double, double> pulse_support(const PulseSpec& spec, double level = 0.01);

/// Piecewise-linear omega(t) sweeping the m -> m+step resonances for
/// m = m_start .. m_end uniformly across [t_lo, t_hi].
std::vector<std::pair<double, double>> design_ladder_knots(const MorseParameters& p,
                                                           int m_start, int m_end, int step,
                                                           double t_lo, double t_hi);

/// Pulse with everything precomputed: dimensionless amplitude, compiled
/// chirp knots and their exact phase integrals.
class CompiledPulse {
public:
    CompiledPulse(const PulseSpec& spec, const MorseParameters& p, double q_e_C);

    double envelope(double t) const;
    double omega(double t) const;   // instantaneous carrier frequency, units of omega0
    double phase(double t) const;   // 2*pi * integral of omega from t = 0
    double field(double t) const;   // envelope * cos(phase + phase0)

    double peak_dimensionless() const { return peak_; }
    const std::vector<std::pair<double, double>>& chirp_knots() const { return knots_; }
    std::pair<double, double> support(double level = 0.01) const;
    double area() const;  // integral of the envelope over its support

    const PulseSpec& spec() const { return spec_; }

private:
    PulseSpec spec_;
    double peak_ = 0.0;       // dimensionless peak
    double amplitude_ = 0.0;  // E_a such that max envelope == peak
    std::vector<std::pair<double, double>> knots_;
    std::vector<double> phase_at_knot_;  // integral of omega up to each knot
};

/// Dimensionless envelope value; peak normalized to the converted peak field.
double envelope(const PulseSpec& spec, const MorseParameters& p, double q_e_C, double t);

/// Dimensionless instantaneous field envelope(t) * cos(Phi(t) + phase0).
double field(const PulseSpec& spec, const MorseParameters& p, double q_e_C, double t);

/// Sum of compiled pulses; the drive seen by the propagator.
class PulseSequence {
public:
    PulseSequence() = default;
    PulseSequence(const std::vector<PulseSpec>& specs, const MorseParameters& p, double q_e_C);

    double field(double t) const;
    double envelope_sum(double t) const;
    const std::vector<CompiledPulse>& pulses() const { return pulses_; }
    bool empty() const { return pulses_.empty(); }

private:
    std::vector<CompiledPulse> pulses_;
};

} // namespace morsedyn
