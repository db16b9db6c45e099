#pragma once

#include <cmath>

#include "morsedyn/morse.hpp"

namespace morsedyn::test {

/// Parameters with a prescribed dimensionless s; physical fields left at
/// placeholder values, good enough for everything that never converts units.
inline MorseParameters params_from_s(double s) {
    MorseParameters p;
    p.s = s;
    p.sigma = s - std::floor(s);
    p.n_bound = static_cast<int>(std::floor(s)) + 1;
    p.mass_u = 1.0;
    p.well_depth_eV = 1.0;
    p.range_per_nm = 1.0;
    p.omega0 = 1.0e14;
    return p;
}

/// The NO molecule of the worked scenario (14N16O reduced mass).
inline MorseParameters no_params() {
    return derive_params(7.466433, 6.497, 27.68);
}

} // namespace morsedyn::test
