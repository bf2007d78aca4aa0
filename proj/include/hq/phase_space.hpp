#pragma once

#include <vector>

#include "hq/kernels.hpp"
#include "hq/superposition.hpp"

namespace hq {

/// Wavefunction sampled on the x-quadratures of one or two modes. For two
/// axes, values are row-major with the first axis slow.
struct QuadratureField {
    std::vector<int> axes;
    std::vector<Grid1D> grids;
    std::vector<cplx> values;

    cplx at(int i, int j = 0) const {
        return grids.size() == 1 ? values[i] : values[static_cast<std::size_t>(i) * grids[1].count + j];
    }
};

struct WignerGrid {
    int mode = 0;
    Grid1D x;
    Grid1D p;
    std::vector<double> values;  // row-major, x slow
    double normalization_residual = 0.0;  // |1 - sum W dx dp|
    double imaginary_residue = 0.0;       // max |Im W| before discarding

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * p.count + j]; }
};

/// Symmetric grid covering every branch of the given modes:
/// +-(sqrt2 * max|alpha| + 6) with `count` points.
Grid1D covering_grid(const MultimodeSuperposition& state, const std::vector<int>& modes, int count = 401);

/// psi(X) or psi(X_a, X_b). Other modes must be branch-independent
/// (NotPureReduction otherwise) and factor out as a common product state.
QuadratureField quadrature_wavefunction(const MultimodeSuperposition& state, const std::vector<int>& axes,
                                        const std::vector<Grid1D>& grids);

/// Analytic Wigner function of a normalized single-mode state (MultiMode otherwise).
/// Throws NonHermitianResidue when |Im W| exceeds 1e-12 anywhere.
WignerGrid wigner_single_mode(const MultimodeSuperposition& state, const Grid1D& x, const Grid1D& p);

/// Sum_p W dp, the x-marginal.
std::vector<double> wigner_x_marginal(const WignerGrid& w);

}  // namespace hq
