#pragma once

#include <vector>

namespace morsedyn {

/// Physical well parameters plus the derived dimensionless constants that
/// drive everything else. Energies are measured in units of
/// hbar*omega0/(2s+1); the coordinate is range * displacement.
struct MorseParameters {
    // inputs
    double mass_u = 0.0;         // reduced mass, unified atomic mass units
    double well_depth_eV = 0.0;  // D0
    double range_per_nm = 0.0;   // alpha

    // derived
    double omega0 = 0.0;  // rad/s
    double s = 0.0;
    double sigma = 0.0;   // fractional part of s
    int n_bound = 0;      // floor(s) + 1

    int bound_top() const { return n_bound - 1; }  // [s]
    double period_s() const;                       // T = 2*pi/omega0
    bool degenerate() const { return s < 1.0; }    // single bound state
};

/// Derive the dimensionless constants from (mass, depth, range).
/// Throws std::domain_error on non-positive input.
MorseParameters derive_params(double mass_u, double well_depth_eV, double range_per_nm);

/// Bound level energy -(s-m)^2 for 0 <= m <= [s].
double bound_energy(const MorseParameters& p, int m);

/// Ladder normalization coefficients C_0..C_N with C_0 = 0 and
/// C_k = sqrt(k (k + 2 sigma - 1)).
std::vector<double> ladder_coefficients(const MorseParameters& p, int N);

/// Symmetric tridiagonal matrix stored as main and single off diagonal.
struct TridiagonalMatrix {
    std::vector<double> diag;     // length N+1
    std::vector<double> offdiag;  // length N

    int size() const { return static_cast<int>(diag.size()); }
};

/// Free Hamiltonian in the quasi-number basis, indices 0..N. The
/// off-diagonal vanishes identically at [s]: the bound block decouples.
/// Requires N >= [s] + 2.
TridiagonalMatrix h0_matrix(const MorseParameters& p, int N);

/// Quasi-number wavefunction phi_n at dimensionless coordinate x,
/// evaluated through y = (2s+1) e^{-x} with log-domain normalization.
double phi_wavefunction(const MorseParameters& p, int n, double x);

} // namespace morsedyn
