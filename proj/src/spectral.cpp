#include "morsedyn/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

#include "morsedyn/kernels.hpp"

namespace morsedyn {

namespace {

// eigen-decompose one tridiagonal block in place; z is (n x n) row-major
void block_eigen(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                 int n, const char* name) {
    const lapack_int info =
        LAPACKE_dstedc(LAPACK_ROW_MAJOR, 'I', n, d.data(), e.data(), z.data(), n);
    if (info != 0)
        throw std::runtime_error(std::string("diagonalize: ") + name +
                                 " block failed to converge, info=" + std::to_string(info));
}

} // namespace

SpectralBasis diagonalize(const MorseParameters& p, const TridiagonalMatrix& h0) {
    const int size = h0.size();
    const int nb = p.n_bound;
    if (size < nb + 2) throw std::domain_error("diagonalize: matrix smaller than [s]+2");
    if (h0.offdiag[nb - 1] != 0.0)
        throw std::invalid_argument(
            "diagonalize: bound block not decoupled (offdiag[[s]] != 0)");

    SpectralBasis out;
    out.params = p;
    out.n_bound = nb;
    out.vectors = Matrix(size, size);
    out.energies_numeric.resize(size);

    // bound block 0..nb-1
    {
        std::vector<double> d(h0.diag.begin(), h0.diag.begin() + nb);
        std::vector<double> e(h0.offdiag.begin(), h0.offdiag.begin() + nb - 1);
        std::vector<double> z(static_cast<std::size_t>(nb) * nb);
        block_eigen(d, e, z, nb, "bound");
        for (int j = 0; j < nb; ++j) out.energies_numeric[j] = d[j];
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) out.vectors(i, j) = z[static_cast<std::size_t>(i) * nb + j];
    }

    // positive block nb..size-1
    {
        const int np = size - nb;
        std::vector<double> d(h0.diag.begin() + nb, h0.diag.end());
        std::vector<double> e(h0.offdiag.begin() + nb, h0.offdiag.end());
        std::vector<double> z(static_cast<std::size_t>(np) * np);
        block_eigen(d, e, z, np, "positive");
        for (int j = 0; j < np; ++j) out.energies_numeric[nb + j] = d[j];
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j)
                out.vectors(nb + i, nb + j) = z[static_cast<std::size_t>(i) * np + j];
    }

    // deterministic sign: largest-magnitude component positive
    for (int j = 0; j < size; ++j) {
        int imax = 0;
        double best = 0.0;
        for (int i = 0; i < size; ++i) {
            const double a = std::abs(out.vectors(i, j));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (out.vectors(imax, j) < 0.0)
            for (int i = 0; i < size; ++i) out.vectors(i, j) = -out.vectors(i, j);
    }

    // analytic bound energies replace the numerical ones; long-time phases
    // would otherwise pick up the O(1e-9) spectral noise
    out.energies = out.energies_numeric;
    for (int m = 0; m < nb; ++m) out.energies[m] = bound_energy(p, m);
    return out;
}

ReducedSystem reduce(const SpectralBasis& basis, const Matrix& mu_full, int M) {
    const int size = basis.vectors.rows();
    const int nb = basis.n_bound;
    if (M <= nb - 1)
        throw std::domain_error("reduce: M must exceed [s] = " + std::to_string(nb - 1));
    if (M + 1 > size) throw std::domain_error("reduce: M exceeds basis size");
    if (mu_full.rows() != size || mu_full.cols() != size)
        throw std::invalid_argument("reduce: mu dimension mismatch");

    // kept states are exactly the first M+1 columns: bound block first,
    // then the positive block ascending
    Matrix v(size, M + 1);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j <= M; ++j) v(i, j) = basis.vectors(i, j);

    ReducedSystem red;
    red.params = basis.params;
    red.n_bound = nb;
    red.energies.assign(basis.energies.begin(), basis.energies.begin() + M + 1);
    red.mu = kernels::basis_transform(mu_full, v);
    symmetrize(red.mu);
    return red;
}

} // namespace morsedyn
