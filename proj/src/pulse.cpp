#include "morsedyn/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "morsedyn/constants.hpp"

namespace morsedyn {

double field_to_dimensionless(const MorseParameters& p, double q_e_C,
                              double field_V_per_cm) {
    const double field_V_per_m = field_V_per_cm * 100.0;
    const double alpha_per_m = p.range_per_nm * 1e9;
    return (2.0 * p.s + 1.0) * q_e_C * field_V_per_m /
           (constants::hbar_Js * p.omega0 * alpha_per_m);
}

double ladder_resonance(const MorseParameters& p, int m, int step) {
    if (step < 1) throw std::domain_error("ladder_resonance: step must be >= 1");
    if (m < 0 || m + step > p.bound_top())
        throw std::domain_error("ladder_resonance: transition " + std::to_string(m) + " -> " +
                                std::to_string(m + step) + " leaves the bound range");
    return step * (2.0 * (p.s - m) - step) / (2.0 * p.s + 1.0);
}

namespace {

// envelope shape g(u) = e^{-u/tau_f} + e^{u/tau_t}; envelope = amp / g
double shape_g(double u, double tau_f, double tau_t) {
    return std::exp(-u / tau_f) + std::exp(u / tau_t);
}

double peak_offset(double tau_f, double tau_t) {
    return tau_f * tau_t / (tau_f + tau_t) * std::log(tau_t / tau_f);
}

void validate_spec(const PulseSpec& spec) {
    if (!(spec.tau_front > 0.0) || !(spec.tau_tail > 0.0))
        throw std::domain_error("pulse: tau_f and tau_t must be positive");
    if (spec.peak_field_V_per_cm < 0.0)
        throw std::domain_error("pulse: peak field must be >= 0");
}

} // namespace

std::pair<double, double> pulse_support(const PulseSpec& spec, double level) {
    validate_spec(spec);
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("pulse_support: level must lie in (0,1)");
    const double tf = spec.tau_front, tt = spec.tau_tail;
    const double ustar = peak_offset(tf, tt);
    const double gstar = shape_g(ustar, tf, tt);
    const double target = gstar / level;

    auto bisect = [&](double lo, double hi) {
        const bool lo_above = shape_g(lo, tf, tt) > target;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((shape_g(mid, tf, tt) > target) == lo_above)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    double left = ustar - tf * (std::log(target) + 1.0);
    while (shape_g(left, tf, tt) < target) left -= tf;
    double right = ustar + tt * (std::log(target) + 1.0);
    while (shape_g(right, tf, tt) < target) right += tt;
    return {spec.t_center + bisect(left, ustar), spec.t_center + bisect(right, ustar)};
}

std::vector<std::pair<double, double>> design_ladder_knots(const MorseParameters& p,
                                                           int m_start, int m_end, int step,
                                                           double t_lo, double t_hi) {
    if (m_end < m_start)
        throw std::domain_error("design_ladder_knots: m_end must be >= m_start");
    if (!(t_hi > t_lo)) throw std::domain_error("design_ladder_knots: empty time window");
    std::vector<double> omegas;
    for (int m = m_start; m <= m_end; m += step)
        omegas.push_back(ladder_resonance(p, m, step));

    std::vector<std::pair<double, double>> knots;
    const int k = static_cast<int>(omegas.size());
    if (k == 1) {
        knots.emplace_back(t_lo, omegas[0]);
        return knots;
    }
    for (int j = 0; j < k; ++j)
        knots.emplace_back(t_lo + (t_hi - t_lo) * j / (k - 1), omegas[j]);
    return knots;
}

CompiledPulse::CompiledPulse(const PulseSpec& spec, const MorseParameters& p, double q_e_C)
    : spec_(spec) {
    validate_spec(spec);
    peak_ = field_to_dimensionless(p, q_e_C, spec.peak_field_V_per_cm);
    const double ustar = peak_offset(spec.tau_front, spec.tau_tail);
    amplitude_ = peak_ * shape_g(ustar, spec.tau_front, spec.tau_tail);

    switch (spec.chirp.kind) {
    case ChirpSchedule::Kind::constant:
        knots_.emplace_back(0.0, spec.chirp.omega);
        break;
    case ChirpSchedule::Kind::linear:
        if (!(spec.chirp.t_end > spec.chirp.t_start))
            throw std::domain_error("chirp: linear window must have t_end > t_start");
        knots_.emplace_back(spec.chirp.t_start, spec.chirp.omega_start);
        knots_.emplace_back(spec.chirp.t_end, spec.chirp.omega_end);
        break;
    case ChirpSchedule::Kind::piecewise:
        knots_ = spec.chirp.knots;
        if (knots_.empty()) throw std::domain_error("chirp: piecewise needs knots");
        for (std::size_t i = 1; i < knots_.size(); ++i)
            if (!(knots_[i].first > knots_[i - 1].first))
                throw std::domain_error("chirp: piecewise knots must be time-ordered");
        break;
    case ChirpSchedule::Kind::ladder: {
        const auto [lo, hi] = pulse_support(spec);
        knots_ = design_ladder_knots(p, spec.chirp.m_start, spec.chirp.m_end,
                                     spec.chirp.step, lo, hi);
        break;
    }
    }
    for (const auto& [t, w] : knots_)
        if (!(w > 0.0))
            throw std::domain_error("chirp: omega must stay positive (got " +
                                    std::to_string(w) + " at t = " + std::to_string(t) + ")");

    // exact integrals of omega up to each knot, measured from t = 0
    phase_at_knot_.resize(knots_.size());
    phase_at_knot_[0] = knots_[0].second * knots_[0].first;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const auto& [ta, wa] = knots_[i - 1];
        const auto& [tb, wb] = knots_[i];
        phase_at_knot_[i] = phase_at_knot_[i - 1] + 0.5 * (wa + wb) * (tb - ta);
    }
}

double CompiledPulse::envelope(double t) const {
    const double u = t - spec_.t_center;
    return amplitude_ / shape_g(u, spec_.tau_front, spec_.tau_tail);
}

double CompiledPulse::omega(double t) const {
    if (t <= knots_.front().first) return knots_.front().second;
    if (t >= knots_.back().first) return knots_.back().second;
    const auto it = std::upper_bound(
        knots_.begin(), knots_.end(), t,
        [](double v, const std::pair<double, double>& k) { return v < k.first; });
    const auto& [tb, wb] = *it;
    const auto& [ta, wa] = *(it - 1);
    return wa + (wb - wa) * (t - ta) / (tb - ta);
}

double CompiledPulse::phase(double t) const {
    double integral;
    if (t <= knots_.front().first) {
        integral = knots_.front().second * t;
    } else if (t >= knots_.back().first) {
        integral =
            phase_at_knot_.back() + knots_.back().second * (t - knots_.back().first);
    } else {
        const auto it = std::upper_bound(
            knots_.begin(), knots_.end(), t,
            [](double v, const std::pair<double, double>& k) { return v < k.first; });
        const std::size_t i = it - knots_.begin();
        const auto& [ta, wa] = knots_[i - 1];
        integral = phase_at_knot_[i - 1] + 0.5 * (wa + omega(t)) * (t - ta);
    }
    return 2.0 * constants::pi * integral;
}

double CompiledPulse::field(double t) const {
    return envelope(t) * std::cos(phase(t) + spec_.carrier_phase0);
}

std::pair<double, double> CompiledPulse::support(double level) const {
    return pulse_support(spec_, level);
}

double CompiledPulse::area() const {
    const auto [lo, hi] = pulse_support(spec_, 1e-7);
    const int panels = 20000;
    const double h = (hi - lo) / panels;
    double acc = envelope(lo) + envelope(hi);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * envelope(lo + i * h);
    return acc * h / 3.0;
}

double envelope(const PulseSpec& spec, const MorseParameters& p, double q_e_C, double t) {
    return CompiledPulse(spec, p, q_e_C).envelope(t);
}

double field(const PulseSpec& spec, const MorseParameters& p, double q_e_C, double t) {
    return CompiledPulse(spec, p, q_e_C).field(t);
}

PulseSequence::PulseSequence(const std::vector<PulseSpec>& specs, const MorseParameters& p,
                             double q_e_C) {
    pulses_.reserve(specs.size());
    for (const PulseSpec& s : specs) pulses_.emplace_back(s, p, q_e_C);
}

double PulseSequence::field(double t) const {
    double v = 0.0;
    for (const CompiledPulse& p : pulses_) v += p.field(t);
    return v;
}

double PulseSequence::envelope_sum(double t) const {
    double v = 0.0;
    for (const CompiledPulse& p : pulses_) v += p.envelope(t);
    return v;
}

} // namespace morsedyn
