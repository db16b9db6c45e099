#pragma once

#include <vector>

#include "morsedyn/matrix.hpp"
#include "morsedyn/morse.hpp"

namespace morsedyn {

/// Eigenbasis of the truncated free Hamiltonian. The bound block
/// (indices 0..[s]) and the positive-energy block are diagonalized
/// independently; `vectors` is block-diagonal and orthogonal, columns
/// ordered bound-ascending then positive-ascending. Bound entries of
/// `energies` carry the analytic values -(s-m)^2; `energies_numeric`
/// keeps the raw eigenvalues of both blocks.
struct SpectralBasis {
    MorseParameters params;
    std::vector<double> energies;
    std::vector<double> energies_numeric;
    Matrix vectors;
    int n_bound = 0;
};

/// Diagonalize both tridiagonal blocks. Eigenvector signs are fixed so the
/// largest-magnitude component of each column is positive.
SpectralBasis diagonalize(const MorseParameters& p, const TridiagonalMatrix& h0);

/// The M-state model the dynamics runs in: all bound levels plus the
/// lowest M - [s] positive-energy states.
struct ReducedSystem {
    MorseParameters params;
    std::vector<double> energies;  // length M+1
    Matrix mu;                     // (M+1) x (M+1), symmetric
    int n_bound = 0;

    int size() const { return static_cast<int>(energies.size()); }
};

/// Project mu_full into the kept eigenstates. Requires [s] < M <= N.
ReducedSystem reduce(const SpectralBasis& basis, const Matrix& mu_full, int M);

} // namespace morsedyn
