#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morsedyn/dipole.hpp"
#include "morsedyn/morse.hpp"
#include "morsedyn/propagator.hpp"
#include "morsedyn/pulse.hpp"

namespace morsedyn {

/// Full description of a run, mirrored one-to-one by the JSON config file.
/// Keys carry explicit unit suffixes (mass_u, D0_eV, tau_f_T, ...).
struct ScenarioConfig {
    struct Molecule {
        double mass_u = 0.0;
        double D0_eV = 0.0;
        double alpha_per_nm = 0.0;
    } molecule;

    struct Dipole {
        std::string fit_file;  // empty when explicit terms are given
        int fit_terms = 2;
        bool fit_fix_d_zero = true;
        std::optional<double> equilibrium_nm;
        std::vector<DipoleTerm> terms;
        std::optional<double> effective_charge_e;  // units of e; overrides the fit
    } dipole;

    struct Truncation {
        int N = 3000;
        int M = 200;
    } truncation;

    std::vector<PulseSpec> pulses;
    bool zero_field = false;

    struct Integrator {
        double tol = 1e-9;
        double output_stride_T = 1.0;
        std::string method = "dop853";  // dop853 | dopri5
        std::string frame = "direct";   // direct | rotated
    } integrator;

    struct Simulation {
        double t_start_T = 0.0;
        double t_end_T = 2600.0;
        int initial_state = 0;
    } simulation;

    struct Outputs {
        std::string dir = "out";
        bool cache = true;
        std::string cache_dir;          // default: <dir>/cache
        int trajectory_populations = -1;  // columns in the CSV; -1 = all bound
        int spectrum_positive_rows = 20;
    } outputs;

    struct Sweep {
        std::string parameter;  // field_scale | q_e_scale | pulse_omega_w0:<idx> | tol
        std::vector<double> values;
    };
    std::optional<Sweep> sweep;

    std::uint64_t seed = 20020531;
    double certify_threshold = 1e-6;
    int certify_samples = 64;

    IntegratorOptions integrator_options() const;
};

ScenarioConfig parse_scenario_text(const std::string& json_text, const std::string& origin);
ScenarioConfig load_scenario(const std::string& path);

/// Built-in configurations. Known names: "no-paper", "no-paper-tuned".
const std::vector<std::string>& preset_names();
std::string preset_text(const std::string& name);
ScenarioConfig preset_scenario(const std::string& name);

} // namespace morsedyn
