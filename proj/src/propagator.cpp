#include "morsedyn/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "morsedyn/constants.hpp"
#include "morsedyn/kernels.hpp"
#include "morsedyn/rk.hpp"

namespace morsedyn {

namespace {

using rk::cvec;

struct DirectRhs {
    const ReducedSystem& sys;
    const PulseSequence& drive;
    double kappa;  // 2 pi / (2s+1)
    cvec scratch;
    long n_calls = 0;

    void operator()(double t, const cvec& y, cvec& dydt) {
        ++n_calls;
        kernels::sym_matvec(sys.mu, y.data(), scratch.data());
        const double field = drive.field(t);
        const int n = static_cast<int>(y.size());
        for (int i = 0; i < n; ++i) {
            const cplx v = sys.energies[i] * y[i] - field * scratch[i];
            dydt[i] = cplx(kappa * v.imag(), -kappa * v.real());  // -i kappa v
        }
    }
};

// State is beta_n = e^{+i kappa E_n t} b_n; the free rotation is exact and
// only the drive term remains.
struct RotatedRhs {
    const ReducedSystem& sys;
    const PulseSequence& drive;
    double kappa;
    cvec w, scratch;
    long n_calls = 0;

    void operator()(double t, const cvec& y, cvec& dydt) {
        ++n_calls;
        const double field = drive.field(t);
        const int n = static_cast<int>(y.size());
        for (int i = 0; i < n; ++i) {
            const double th = kappa * sys.energies[i] * t;
            w[i] = y[i] * cplx(std::cos(th), -std::sin(th));  // e^{-i kappa E t} beta
        }
        kernels::sym_matvec(sys.mu, w.data(), scratch.data());
        for (int i = 0; i < n; ++i) {
            const double th = kappa * sys.energies[i] * t;
            const cplx v = scratch[i] * cplx(std::cos(th), std::sin(th));
            dydt[i] = cplx(-kappa * field * v.imag(), kappa * field * v.real());  // +i kappa field v
        }
    }
};

struct SampleSink {
    const ReducedSystem& sys;
    const IntegratorOptions& opts;
    TrajectoryRecord& rec;
    int row = 0;

    void operator()(double t, const cvec& y) {
        rec.times.push_back(t);
        double norm = 0.0;
        const int n = static_cast<int>(y.size());
        for (int i = 0; i < n; ++i) {
            const double pop = std::norm(y[i]);
            rec.populations(row, i) = pop;
            norm += pop;
        }
        rec.dissociation.push_back(
            dissociation_probability(std::span<const cplx>(y.data(), y.size()), sys.n_bound));
        const double drift = std::abs(1.0 - norm);
        rec.norm_drift.push_back(drift);
        rec.max_norm_drift = std::max(rec.max_norm_drift, drift);
        if (drift > 100.0 * std::max(opts.rtol, opts.atol))
            throw std::runtime_error(
                "propagate: norm drift " + std::to_string(drift) + " at t = " +
                std::to_string(t) +
                " exceeds 100*tol; generator not Hermitian or step control broken");
        ++row;
    }
};

template <class Stepper, class F>
void drive_integration(F& f, cvec& y, double t0, double t1, const IntegratorOptions& opts,
                       TrajectoryRecord& rec, SampleSink& sink) {
    const int n = static_cast<int>(y.size());
    Stepper st(n);
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    if (span == 0.0) {
        sink(t0, y);
        return;
    }
    const double stride = opts.output_stride > 0 ? opts.output_stride : span;

    double t = t0;
    f(t, y, st.k_first());
    double h = opts.initial_step > 0
                   ? std::min(opts.initial_step, span)
                   : rk::initial_step(f, st, t0, y, dir, opts.atol, opts.rtol, span);

    sink(t0, y);
    long sample_index = 1;
    double t_next = (stride * sample_index >= span) ? t1 : t0 + dir * stride * sample_index;

    cvec ynew(n);
    double errold = 1e-4;
    bool last_rejected = false;
    const double facmin = 0.2, facmax = Stepper::order >= 8 ? 6.0 : 10.0, safe = 0.9;

    while (dir * (t1 - t) > 0.0) {
        if (rec.n_steps >= opts.max_steps)
            throw std::runtime_error("propagate: step limit exceeded at t = " +
                                     std::to_string(t));
        if (!(h > 4.0 * 2.220446049250313e-16 * std::max(std::abs(t), 1.0)) &&
            !opts.fixed_step)
            throw std::runtime_error("propagate: step size underflow at t = " +
                                     std::to_string(t) + " (h = " + std::to_string(h) + ")");

        const double h_cap = dir * (t_next - t);
        const double h_try = std::min(h, h_cap);
        const double err = st.attempt(f, t, dir * h_try, y, ynew, opts.atol, opts.rtol);
        ++rec.n_steps;

        if (err <= 1.0 || opts.fixed_step) {
            ++rec.n_accepted;
            t = (h_try == h_cap) ? t_next : t + dir * h_try;
            std::swap(y, ynew);
            st.accept();
            if (Stepper::needs_refresh_after_accept) f(t, y, st.k_first());
            if (h_try == h_cap && t == t_next) {
                sink(t, y);
                ++sample_index;
                t_next = (stride * sample_index >= span) ? t1 : t0 + dir * stride * sample_index;
            }
            if (!opts.fixed_step) {
                double fac = err <= 0.0 ? facmax
                                        : safe * std::pow(err, -Stepper::ctrl_alpha) *
                                              std::pow(errold, Stepper::ctrl_beta);
                fac = std::clamp(fac, facmin, last_rejected ? 1.0 : facmax);
                h = h_try * fac;
                errold = std::max(err, 1e-4);
            }
            last_rejected = false;
        } else {
            ++rec.n_rejected;
            last_rejected = true;
            const double fac =
                std::clamp(safe * std::pow(err, -Stepper::ctrl_alpha), facmin, 1.0);
            h = h_try * fac;
        }
    }
}

} // namespace

double TrajectoryRecord::dissociation_at(double t) const {
    if (times.empty()) return 0.0;
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t idx = it == times.begin() ? 0 : (it - times.begin()) - 1;
    return dissociation[idx];
}

void schrodinger_rhs(const ReducedSystem& sys, const PulseSequence& drive, double t,
                     const cplx* b, cplx* dbdt) {
    const int n = sys.size();
    std::vector<cplx> tmp(n);
    kernels::sym_matvec(sys.mu, b, tmp.data());
    const double field = drive.field(t);
    const double kappa = 2.0 * constants::pi / (2.0 * sys.params.s + 1.0);
    for (int i = 0; i < n; ++i) {
        const cplx v = sys.energies[i] * b[i] - field * tmp[i];
        dbdt[i] = cplx(kappa * v.imag(), -kappa * v.real());
    }
}

double dissociation_probability(std::span<const cplx> b, int n_bound) {
    double bound = 0.0;
    const int nb = std::min<int>(n_bound, static_cast<int>(b.size()));
    for (int i = 0; i < nb; ++i) bound += std::norm(b[i]);
    return std::clamp(1.0 - bound, 0.0, 1.0);
}

TrajectoryRecord propagate(const ReducedSystem& sys, const PulseSequence& drive, double t0,
                           double t1, const std::vector<cplx>& initial,
                           const IntegratorOptions& opts) {
    const int n = sys.size();
    if (static_cast<int>(initial.size()) != n)
        throw std::invalid_argument("propagate: initial state dimension mismatch");
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
        throw std::invalid_argument("propagate: tolerances must be positive");
    double norm = 0.0;
    for (const cplx& c : initial) norm += std::norm(c);
    if (std::abs(norm - 1.0) > 1e-8)
        throw std::invalid_argument("propagate: initial state not normalized");
    if (sys.mu.rows() != n || sys.mu.cols() != n)
        throw std::invalid_argument("propagate: mu dimension mismatch");
    const double asym = max_asymmetry(sys.mu);
    if (asym > 1e-10)
        throw std::invalid_argument(
            "propagate: mu not symmetric (deviation " + std::to_string(asym) +
            "); generator would not be Hermitian");

    const double kappa = 2.0 * constants::pi / (2.0 * sys.params.s + 1.0);
    const long expected =
        opts.output_stride > 0
            ? static_cast<long>(std::abs(t1 - t0) / opts.output_stride) + 2
            : 2;

    TrajectoryRecord rec;
    rec.populations = Matrix(static_cast<int>(expected) + 8, n);
    rec.times.reserve(expected);

    SampleSink sink{sys, opts, rec, 0};
    cvec y = initial;

    const bool rotated = opts.frame == IntegratorOptions::Frame::rotated;
    if (rotated) {
        // beta(t0) = e^{+i kappa E t0} b(t0)
        for (int i = 0; i < n; ++i) {
            const double th = kappa * sys.energies[i] * t0;
            y[i] *= cplx(std::cos(th), std::sin(th));
        }
        RotatedRhs rhs{sys, drive, kappa, cvec(n), cvec(n)};
        if (opts.method == IntegratorOptions::Method::dop853)
            drive_integration<rk::Dop853>(rhs, y, t0, t1, opts, rec, sink);
        else
            drive_integration<rk::Dopri5>(rhs, y, t0, t1, opts, rec, sink);
        rec.n_rhs = rhs.n_calls;
        // back to the lab frame
        const double tf = rec.times.back();
        for (int i = 0; i < n; ++i) {
            const double th = kappa * sys.energies[i] * tf;
            y[i] *= cplx(std::cos(th), -std::sin(th));
        }
    } else {
        DirectRhs rhs{sys, drive, kappa, cvec(n)};
        if (opts.method == IntegratorOptions::Method::dop853)
            drive_integration<rk::Dop853>(rhs, y, t0, t1, opts, rec, sink);
        else
            drive_integration<rk::Dopri5>(rhs, y, t0, t1, opts, rec, sink);
        rec.n_rhs = rhs.n_calls;
    }

    rec.final_state = std::move(y);
    // drop unused preallocated rows
    if (sink.row < rec.populations.rows()) {
        Matrix trimmed(sink.row, n);
        for (int i = 0; i < sink.row; ++i)
            for (int j = 0; j < n; ++j) trimmed(i, j) = rec.populations(i, j);
        rec.populations = std::move(trimmed);
    }
    return rec;
}

TrajectoryRecord propagate(const ReducedSystem& sys, const PulseSequence& drive, double t0,
                           double t1, int initial_state, const IntegratorOptions& opts) {
    if (initial_state < 0 || initial_state >= sys.size())
        throw std::invalid_argument("propagate: initial state index out of range");
    std::vector<cplx> y(sys.size(), 0.0);
    y[initial_state] = 1.0;
    return propagate(sys, drive, t0, t1, y, opts);
}

} // namespace morsedyn
