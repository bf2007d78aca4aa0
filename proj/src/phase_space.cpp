#include "hq/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hq/errors.hpp"

namespace hq {

Grid1D covering_grid(const MultimodeSuperposition& state, const std::vector<int>& modes, int count) {
    double reach = 0.0;
    for (int m : modes) {
        const std::size_t idx = state.mode_index(m);
        for (const auto& b : state.branches) reach = std::max(reach, std::abs(b.alphas[idx]));
    }
    const double half = std::numbers::sqrt2 * reach + 6.0;
    return {-half, half, count};
}

QuadratureField quadrature_wavefunction(const MultimodeSuperposition& state, const std::vector<int>& axes,
                                        const std::vector<Grid1D>& grids) {
    check_layout(state);
    if (axes.empty() || axes.size() > 2 || grids.size() != axes.size())
        throw ModeMismatch("quadrature_wavefunction takes one or two axes with one grid each");
    if (axes.size() == 2 && axes[0] == axes[1]) throw ModeMismatch("quadrature axes must differ");
    std::vector<std::size_t> idx;
    for (int a : axes) idx.push_back(state.mode_index(a));

    // Spectator modes contribute a common factor prod_n <.|alpha_n>; for a pure
    // reduction they must not vary between branches.
    for (std::size_t n = 0; n < state.modes.size(); ++n) {
        if (std::find(idx.begin(), idx.end(), n) != idx.end()) continue;
        if (alpha_spread(state, n) > 1e-12)
            throw NotPureReduction("mode " + std::to_string(state.modes[n]) +
                                   " varies across branches; the reduced wavefunction is not pure");
    }

    const std::size_t K = state.size();
    std::vector<cplx> weights(K), a(K), b(K);
    for (std::size_t k = 0; k < K; ++k) {
        weights[k] = state.branches[k].weight;
        a[k] = state.branches[k].alphas[idx[0]];
        if (idx.size() == 2) b[k] = state.branches[k].alphas[idx[1]];
    }
    QuadratureField field{axes, grids, {}};
    if (axes.size() == 1) {
        field.values = parallel::wavefunction_1d({weights, a}, grids[0]);
    } else {
        field.values = parallel::wavefunction_2d(weights, a, b, grids[0], grids[1]).data;
    }
    return field;
}

WignerGrid wigner_single_mode(const MultimodeSuperposition& state, const Grid1D& x, const Grid1D& p) {
    if (state.modes.size() != 1) throw MultiMode("Wigner function needs a single-mode state");
    check_layout(state);
    const std::size_t K = state.size();
    std::vector<cplx> weights(K), alphas(K);
    for (std::size_t k = 0; k < K; ++k) {
        weights[k] = state.branches[k].weight;
        alphas[k] = state.branches[k].alphas[0];
    }
    const ComplexMatrix raw = parallel::wigner({weights, alphas}, x, p);
    WignerGrid w{state.modes[0], x, p, {}, 0.0, 0.0};
    w.values.resize(raw.data.size());
    double total = 0.0;
    for (std::size_t i = 0; i < raw.data.size(); ++i) {
        w.values[i] = raw.data[i].real();
        w.imaginary_residue = std::max(w.imaginary_residue, std::abs(raw.data[i].imag()));
        total += w.values[i];
    }
    if (w.imaginary_residue > 1e-12)
        throw NonHermitianResidue("Wigner function has imaginary residue " + std::to_string(w.imaginary_residue));
    w.normalization_residual = std::abs(1.0 - total * x.step() * p.step());
    return w;
}

std::vector<double> wigner_x_marginal(const WignerGrid& w) {
    std::vector<double> m(w.x.count, 0.0);
    for (int i = 0; i < w.x.count; ++i) {
        double sum = 0.0;
        for (int j = 0; j < w.p.count; ++j) sum += w.at(i, j);
        m[i] = sum * w.p.step();
    }
    return m;
}

}  // namespace hq
