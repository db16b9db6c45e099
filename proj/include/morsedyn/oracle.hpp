#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morsedyn/dipole.hpp"
#include "morsedyn/matrix.hpp"
#include "morsedyn/morse.hpp"

// Brute-force evaluation of basis-state matrix elements by generalized
// Gauss-Laguerre quadrature in y = (2s+1) e^{-x}. Entirely independent of
// the recurrence path it certifies.
namespace morsedyn::oracle {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// <phi_m| (a X + d) e^{-gamma X} |phi_n> by quadrature. Node count starts
/// at m+n+40 and is refined until two consecutive rules agree; disagreement
/// after refinement throws OracleError. Indices capped at 200.
double oracle_element(const MorseParameters& p, int m, int n, const DipoleTerm& term);

/// Sum of oracle_element over the model terms.
double oracle_mu_element(const MorseParameters& p, int m, int n, const DipoleModel& model);

/// Gram matrix of phi_0..phi_K computed by quadrature.
Matrix oracle_gram(const MorseParameters& p, int K);

struct OracleReport {
    struct Sample {
        int m = 0, n = 0;
        double recurrence = 0.0;
        double quadrature = 0.0;
        double deviation = 0.0;
    };
    std::vector<Sample> samples;
    double worst_deviation = 0.0;
    int worst_m = -1, worst_n = -1;
    double threshold = 0.0;
    bool pass = false;

    std::string to_text() const;
};

/// Compare recurrence-built dipole matrices against the quadrature oracle
/// on sample_count random index pairs (deterministic in seed) plus a fixed
/// near-diagonal set. Indices range over 0..min(N, 200).
OracleReport certify(const MorseParameters& p, const DipoleModel& model, int N,
                     int sample_count, double threshold, std::uint64_t seed);

/// Same comparison against an externally supplied mu matrix; lets tests
/// inject faults and the pipeline certify matrices it already built.
OracleReport certify_matrix(const MorseParameters& p, const DipoleModel& model,
                            const Matrix& mu, int sample_count, double threshold,
                            std::uint64_t seed);

} // namespace morsedyn::oracle
