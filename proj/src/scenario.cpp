#include "morsedyn/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace morsedyn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw std::runtime_error(origin + ": " + what);
}

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

const json& need(const json& j, const char* key, const std::string& origin,
                 const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) fail(origin, "missing key '" + where + key + "'");
    return *it;
}

ChirpSchedule parse_chirp(const json& j, const std::string& origin, const std::string& where) {
    ChirpSchedule c;
    const std::string kind = need(j, "kind", origin, where).get<std::string>();
    if (kind == "constant") {
        c.kind = ChirpSchedule::Kind::constant;
        c.omega = need(j, "omega_w0", origin, where).get<double>();
    } else if (kind == "linear") {
        c.kind = ChirpSchedule::Kind::linear;
        c.omega_start = need(j, "omega_start_w0", origin, where).get<double>();
        c.omega_end = need(j, "omega_end_w0", origin, where).get<double>();
        c.t_start = need(j, "t_start_T", origin, where).get<double>();
        c.t_end = need(j, "t_end_T", origin, where).get<double>();
    } else if (kind == "piecewise") {
        c.kind = ChirpSchedule::Kind::piecewise;
        for (const auto& k : need(j, "knots_T_w0", origin, where))
            c.knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    } else if (kind == "ladder") {
        c.kind = ChirpSchedule::Kind::ladder;
        c.m_start = need(j, "m_start", origin, where).get<int>();
        c.m_end = need(j, "m_end", origin, where).get<int>();
        c.step = need(j, "step", origin, where).get<int>();
    } else {
        fail(origin, "unknown chirp kind '" + kind + "' at " + where);
    }
    return c;
}

} // namespace

IntegratorOptions ScenarioConfig::integrator_options() const {
    IntegratorOptions o;
    o.rtol = integrator.tol;
    o.atol = integrator.tol;
    o.output_stride = integrator.output_stride_T;
    o.method = integrator.method == "dopri5" ? IntegratorOptions::Method::dopri5
                                             : IntegratorOptions::Method::dop853;
    o.frame = integrator.frame == "rotated" ? IntegratorOptions::Frame::rotated
                                            : IntegratorOptions::Frame::direct;
    return o;
}

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);  // comments allowed
    } catch (const json::parse_error& e) {
        fail(origin, "parse error at line " + std::to_string(line_of_offset(text, e.byte)) +
                         ": " + e.what());
    }

    ScenarioConfig cfg;
    const json& mol = need(j, "molecule", origin, "");
    cfg.molecule.mass_u = need(mol, "mass_u", origin, "molecule.").get<double>();
    cfg.molecule.D0_eV = need(mol, "D0_eV", origin, "molecule.").get<double>();
    cfg.molecule.alpha_per_nm = need(mol, "alpha_per_nm", origin, "molecule.").get<double>();

    const json& dip = need(j, "dipole", origin, "");
    if (dip.contains("fit_file")) cfg.dipole.fit_file = dip["fit_file"].get<std::string>();
    if (dip.contains("fit_terms")) cfg.dipole.fit_terms = dip["fit_terms"].get<int>();
    if (dip.contains("fit_fix_d_zero"))
        cfg.dipole.fit_fix_d_zero = dip["fit_fix_d_zero"].get<bool>();
    if (dip.contains("equilibrium_nm"))
        cfg.dipole.equilibrium_nm = dip["equilibrium_nm"].get<double>();
    if (dip.contains("terms")) {
        for (const auto& t : dip["terms"]) {
            DipoleTerm term;
            term.a = t.value("a", 0.0);
            term.d = t.value("d", 0.0);
            term.gamma = need(t, "gamma", origin, "dipole.terms[].").get<double>();
            cfg.dipole.terms.push_back(term);
        }
    }
    if (dip.contains("effective_charge_e"))
        cfg.dipole.effective_charge_e = dip["effective_charge_e"].get<double>();
    if (cfg.dipole.terms.empty() && cfg.dipole.fit_file.empty())
        fail(origin, "dipole needs either explicit terms or a fit_file");
    if (!cfg.dipole.terms.empty() && !cfg.dipole.effective_charge_e)
        fail(origin, "explicit dipole terms require effective_charge_e");

    if (j.contains("truncation")) {
        cfg.truncation.N = j["truncation"].value("N", cfg.truncation.N);
        cfg.truncation.M = j["truncation"].value("M", cfg.truncation.M);
    }
    if (cfg.truncation.N <= cfg.truncation.M)
        fail(origin, "truncation requires N > M");

    cfg.zero_field = j.value("zero_field", false);
    if (j.contains("pulses")) {
        int idx = 0;
        for (const auto& pj : j["pulses"]) {
            const std::string where = "pulses[" + std::to_string(idx++) + "].";
            PulseSpec spec;
            spec.peak_field_V_per_cm =
                need(pj, "peak_field_V_per_cm", origin, where).get<double>();
            spec.tau_front = need(pj, "tau_f_T", origin, where).get<double>();
            spec.tau_tail = need(pj, "tau_t_T", origin, where).get<double>();
            spec.t_center = need(pj, "t0_T", origin, where).get<double>();
            spec.carrier_phase0 = pj.value("carrier_phase0_rad", 0.0);
            spec.chirp = parse_chirp(need(pj, "chirp", origin, where), origin, where);
            cfg.pulses.push_back(spec);
        }
    }
    if (cfg.pulses.empty() && !cfg.zero_field)
        fail(origin, "config needs at least one pulse or \"zero_field\": true");

    if (j.contains("integrator")) {
        const json& ij = j["integrator"];
        cfg.integrator.tol = ij.value("tol", cfg.integrator.tol);
        cfg.integrator.output_stride_T =
            ij.value("output_stride_T", cfg.integrator.output_stride_T);
        cfg.integrator.method = ij.value("method", cfg.integrator.method);
        cfg.integrator.frame = ij.value("frame", cfg.integrator.frame);
        if (cfg.integrator.method != "dop853" && cfg.integrator.method != "dopri5")
            fail(origin, "integrator.method must be dop853 or dopri5");
        if (cfg.integrator.frame != "direct" && cfg.integrator.frame != "rotated")
            fail(origin, "integrator.frame must be direct or rotated");
        if (!(cfg.integrator.tol > 0.0)) fail(origin, "integrator.tol must be positive");
    }

    if (j.contains("simulation")) {
        const json& sj = j["simulation"];
        cfg.simulation.t_start_T = sj.value("t_start_T", cfg.simulation.t_start_T);
        cfg.simulation.t_end_T = sj.value("t_end_T", cfg.simulation.t_end_T);
        cfg.simulation.initial_state = sj.value("initial_state", 0);
    }

    if (j.contains("outputs")) {
        const json& oj = j["outputs"];
        cfg.outputs.dir = oj.value("dir", cfg.outputs.dir);
        cfg.outputs.cache = oj.value("cache", cfg.outputs.cache);
        cfg.outputs.cache_dir = oj.value("cache_dir", cfg.outputs.cache_dir);
        cfg.outputs.trajectory_populations =
            oj.value("trajectory_populations", cfg.outputs.trajectory_populations);
        cfg.outputs.spectrum_positive_rows =
            oj.value("spectrum_positive_rows", cfg.outputs.spectrum_positive_rows);
    }

    if (j.contains("sweep")) {
        ScenarioConfig::Sweep sw;
        sw.parameter = need(j["sweep"], "parameter", origin, "sweep.").get<std::string>();
        for (const auto& v : need(j["sweep"], "values", origin, "sweep."))
            sw.values.push_back(v.get<double>());
        if (sw.values.empty()) fail(origin, "sweep.values must not be empty");
        cfg.sweep = sw;
    }

    cfg.seed = j.value("seed", cfg.seed);
    cfg.certify_threshold = j.value("certify_threshold", cfg.certify_threshold);
    cfg.certify_samples = j.value("certify_samples", cfg.certify_samples);
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str(), path);
}

namespace {

// Paper scenario for the NO molecule. The mass is the 14N16O reduced mass;
// pulse envelopes, timings and peak fields follow the published run. The
// carrier schedules sweep the ladder resonances: first neighbors up to the
// coupling minimum, second neighbors across it, and a final resonant push
// at the top of the ladder.
const char* kPresetNoPaper = R"json({
  "molecule": {"mass_u": 7.466433, "D0_eV": 6.497, "alpha_per_nm": 27.68},
  "dipole": {
    "terms": [
      {"a": -9.66, "d": 0.0, "gamma": 0.927},
      {"a": 10.64, "d": 0.0, "gamma": 0.870}
    ],
    "effective_charge_e": 0.5,
    "fit_file": "data/no_dipole.dat",
    "equilibrium_nm": 0.11508
  },
  "truncation": {"N": 3000, "M": 200},
  "pulses": [
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 10.27, "tau_t_T": 246.4, "t0_T": 41.0,
     "chirp": {"kind": "ladder", "m_start": 0, "m_end": 31, "step": 1}},
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 71.87, "tau_t_T": 61.61, "t0_T": 1297.5,
     "chirp": {"kind": "ladder", "m_start": 31, "m_end": 49, "step": 2}},
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 71.87, "tau_t_T": 61.61, "t0_T": 2087.6,
     "chirp": {"kind": "ladder", "m_start": 52, "m_end": 52, "step": 1}}
  ],
  "integrator": {"tol": 1e-9, "output_stride_T": 1.0, "method": "dop853", "frame": "direct"},
  "simulation": {"t_start_T": 0.0, "t_end_T": 2600.0, "initial_state": 0},
  "outputs": {"dir": "out", "cache": true}
})json";

// Tuned variant; same envelopes, adjusted sweeps.
const char* kPresetNoPaperTuned = R"json({
  "molecule": {"mass_u": 7.466433, "D0_eV": 6.497, "alpha_per_nm": 27.68},
  "dipole": {
    "terms": [
      {"a": -9.66, "d": 0.0, "gamma": 0.927},
      {"a": 10.64, "d": 0.0, "gamma": 0.870}
    ],
    "effective_charge_e": 0.5,
    "fit_file": "data/no_dipole.dat",
    "equilibrium_nm": 0.11508
  },
  "truncation": {"N": 3000, "M": 200},
  "pulses": [
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 10.27, "tau_t_T": 246.4, "t0_T": 41.0,
     "chirp": {"kind": "ladder", "m_start": 0, "m_end": 31, "step": 1}},
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 71.87, "tau_t_T": 61.61, "t0_T": 1297.5,
     "chirp": {"kind": "ladder", "m_start": 31, "m_end": 49, "step": 2}},
    {"peak_field_V_per_cm": 1.05e8, "tau_f_T": 71.87, "tau_t_T": 61.61, "t0_T": 2087.6,
     "chirp": {"kind": "ladder", "m_start": 52, "m_end": 52, "step": 1}}
  ],
  "integrator": {"tol": 1e-9, "output_stride_T": 1.0, "method": "dop853", "frame": "direct"},
  "simulation": {"t_start_T": 0.0, "t_end_T": 2600.0, "initial_state": 0},
  "outputs": {"dir": "out", "cache": true}
})json";

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"no-paper", "no-paper-tuned"};
    return names;
}

std::string preset_text(const std::string& name) {
    if (name == "no-paper") return kPresetNoPaper;
    if (name == "no-paper-tuned") return kPresetNoPaperTuned;
    throw std::runtime_error("unknown preset '" + name + "' (known: no-paper, no-paper-tuned)");
}

ScenarioConfig preset_scenario(const std::string& name) {
    return parse_scenario_text(preset_text(name), "preset:" + name);
}

} // namespace morsedyn
