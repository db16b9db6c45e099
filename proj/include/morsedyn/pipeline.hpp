#pragma once

#include <string>

#include "morsedyn/scenario.hpp"
#include "morsedyn/spectral.hpp"

namespace morsedyn {

/// Everything the subcommands need, assembled from a config:
/// parameters -> dipole model -> matrices -> eigenbasis -> reduced system.
struct Pipeline {
    MorseParameters params;
    DipoleModel model;
    double q_e_C = 0.0;
};

/// Resolve parameters and the dipole model (explicit terms or a fit).
Pipeline prepare(const ScenarioConfig& cfg);

/// Reduced system for the configured truncation, served from the binary
/// cache when available. cache_dir empty disables caching.
ReducedSystem reduced_system(const ScenarioConfig& cfg, const Pipeline& pipe,
                             int N, int M, const std::string& cache_dir);

/// Deterministic cache key for (params, model, N, M).
std::string cache_key(const MorseParameters& p, const DipoleModel& model, int N, int M);

void save_reduced(const std::string& path, const ReducedSystem& sys);
ReducedSystem load_reduced(const std::string& path);

} // namespace morsedyn
