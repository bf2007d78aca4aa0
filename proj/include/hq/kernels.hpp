#pragma once

// Grid and matrix kernels over coherent-state branches. Every kernel has a
// straightforward serial reference (namespace serial) that evaluates the
// closed forms point by point, and an OpenMP implementation (namespace
// parallel) used by the library. Tests hold the two against each other and
// bench/ compares their throughput.
//
// Parallel kernels split work over output rows only, so results do not
// depend on the thread count.

#include <complex>
#include <span>
#include <vector>

#include "hq/quadrature.hpp"

namespace hq {

/// Uniform grid with both endpoints included.
struct Grid1D {
    double min = -1.0;
    double max = 1.0;
    int count = 2;

    double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
    double at(int i) const { return i == count - 1 ? max : min + i * step(); }
};

/// Row-major complex matrix view target: rows x cols, element (i, j) at i*cols + j.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    cplx& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    const cplx& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Coherent-state position wavefunction
///   u(X; alpha) = pi^{-1/4} exp(-(X - sqrt2 Re a)^2 / 2 + i sqrt2 (Im a) X - i Re a Im a).
cplx coherent_wavefunction(double x, cplx alpha);

/// Wigner cross-kernel of |alpha_k><alpha_l| as a density in (x, p):
///   (1/pi) exp(-2|b|^2 + 2 b conj(a_l) + 2 conj(b) a_k - |a_k|^2/2 - |a_l|^2/2 - conj(a_l) a_k),
/// with b = (x + i p)/sqrt2. Integrates to <alpha_l|alpha_k> over dx dp.
cplx wigner_cross_kernel(double x, double p, cplx alpha_k, cplx alpha_l);

/// Branch amplitudes for one mode: `alphas[k]` belongs to `weights[k]`.
struct ModeBranches {
    std::span<const cplx> weights;
    std::span<const cplx> alphas;
};

namespace serial {

/// W(x_i, p_j) = sum_kl c_k conj(c_l) W_kl; complex so the imaginary residue can be inspected.
ComplexMatrix wigner(const ModeBranches& branches, const Grid1D& x, const Grid1D& p);
std::vector<cplx> wavefunction_1d(const ModeBranches& branches, const Grid1D& x);
/// psi(X_a,i, X_b,j) = sum_k c_k u(X_a,i; a_k) u(X_b,j; b_k).
ComplexMatrix wavefunction_2d(std::span<const cplx> weights, std::span<const cplx> alphas_a,
                              std::span<const cplx> alphas_b, const Grid1D& xa, const Grid1D& xb);
/// G_kl = prod_n <alpha_{n,k}|alpha_{n,l}>; `alphas` is branch-major (K x modes).
ComplexMatrix overlap_matrix(std::span<const cplx> alphas, int num_modes, std::span<const int> selected);

}  // namespace serial

namespace parallel {

/// Same quantity via the wavefunction Fourier form; O(K N + Nx Ny Np) instead of O(K^2 Nx Np).
ComplexMatrix wigner(const ModeBranches& branches, const Grid1D& x, const Grid1D& p);
std::vector<cplx> wavefunction_1d(const ModeBranches& branches, const Grid1D& x);
ComplexMatrix wavefunction_2d(std::span<const cplx> weights, std::span<const cplx> alphas_a,
                              std::span<const cplx> alphas_b, const Grid1D& xa, const Grid1D& xb);
ComplexMatrix overlap_matrix(std::span<const cplx> alphas, int num_modes, std::span<const int> selected);

}  // namespace parallel

/// Caps the OpenMP team size (HQ_THREADS); 0 leaves the runtime default.
void set_thread_limit(int threads);
int thread_limit();

}  // namespace hq
