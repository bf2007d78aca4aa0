#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "hq/errors.hpp"
#include "hq/kernels.hpp"

namespace hq {

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ColMatrix = Eigen::MatrixXcd;

constexpr int kRowBlock = 16;

int g_thread_limit = 0;

int row_blocks(int rows) { return (rows + kRowBlock - 1) / kRowBlock; }

}  // namespace

void set_thread_limit(int threads) {
    g_thread_limit = std::max(threads, 0);
    if (g_thread_limit > 0) omp_set_num_threads(g_thread_limit);
}

int thread_limit() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

namespace parallel {

// W(x, p) = (1/pi) int dy conj(psi(x + y)) psi(x - y) e^{2 i p y}, with psi
// summed over branches on a fine grid aligned with the x grid. The y rule is
// a trapezoid sum with a step below the integrand's band limit, so it is
// exact to rounding for these Gaussian-analytic integrands.
ComplexMatrix wigner(const ModeBranches& br, const Grid1D& x, const Grid1D& p) {
    constexpr double kTail = 9.0;  // |u| < 1e-17 beyond kTail from a branch centre
    const std::size_t K = br.weights.size();
    ComplexMatrix out(x.count, p.count);
    if (K == 0) return out;

    double c_lo = 1e300, c_hi = -1e300, q_max = 0.0, p_max = 0.0;
    for (const cplx& a : br.alphas) {
        c_lo = std::min(c_lo, std::numbers::sqrt2 * a.real());
        c_hi = std::max(c_hi, std::numbers::sqrt2 * a.real());
        q_max = std::max(q_max, std::numbers::sqrt2 * std::abs(a.imag()));
    }
    for (int j = 0; j < p.count; ++j) p_max = std::max(p_max, std::abs(p.at(j)));
    const double support_lo = c_lo - kTail, support_hi = c_hi + kTail;

    const double band = 2.0 * p_max + 2.0 * (q_max + kTail);
    const double h_max = 2.0 * std::numbers::pi / (band + 10.0);
    const int refine = x.count > 1 ? std::max(1, static_cast<int>(std::ceil(x.step() / h_max))) : 1;
    const double h = x.count > 1 ? x.step() / refine : h_max;
    const int ny = static_cast<int>(std::ceil((support_hi - support_lo) / h)) + 1;

    // Fine grid index f <-> x.min + (f - ny) h, so x_i +- y_n sits at i*refine + ny +- n.
    const int fine = (x.count - 1) * refine + 2 * ny + 1;
    std::vector<cplx> psi(fine, 0.0);
#pragma omp parallel for schedule(static)
    for (int f = 0; f < fine; ++f) {
        const double xf = x.min + (f - ny) * h;
        if (xf < support_lo || xf > support_hi) continue;
        cplx sum = 0.0;
        for (std::size_t k = 0; k < K; ++k) sum += br.weights[k] * coherent_wavefunction(xf, br.alphas[k]);
        psi[f] = sum;
    }

    const int ys = 2 * ny + 1;
    ColMatrix phase(ys, p.count);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < p.count; ++j)
        for (int n = -ny; n <= ny; ++n) phase(n + ny, j) = std::polar(h / std::numbers::pi, 2.0 * p.at(j) * n * h);

    Eigen::Map<RowMatrix> result(out.data.data(), x.count, p.count);
    const int blocks = row_blocks(x.count);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < blocks; ++b) {
        const int i0 = b * kRowBlock, rows = std::min(kRowBlock, x.count - i0);
        RowMatrix g(rows, ys);
        for (int r = 0; r < rows; ++r) {
            const int centre = (i0 + r) * refine + ny;
            for (int n = -ny; n <= ny; ++n) {
                const int up = centre + n, down = centre - n;
                g(r, n + ny) = std::conj(psi[up]) * psi[down];
            }
        }
        result.block(i0, 0, rows, p.count).noalias() = g * phase;
    }
    return out;
}

std::vector<cplx> wavefunction_1d(const ModeBranches& br, const Grid1D& x) {
    std::vector<cplx> out(x.count);
    const std::size_t K = br.weights.size();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < x.count; ++i) {
        cplx sum = 0.0;
        const double xi = x.at(i);
        for (std::size_t k = 0; k < K; ++k) sum += br.weights[k] * coherent_wavefunction(xi, br.alphas[k]);
        out[i] = sum;
    }
    return out;
}

ComplexMatrix wavefunction_2d(std::span<const cplx> weights, std::span<const cplx> alphas_a,
                              std::span<const cplx> alphas_b, const Grid1D& xa, const Grid1D& xb) {
    const int K = static_cast<int>(weights.size());
    ComplexMatrix out(xa.count, xb.count);
    Eigen::Map<RowMatrix> result(out.data.data(), xa.count, xb.count);
    ColMatrix ub(xb.count, K);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < xb.count; ++j) ub(j, k) = coherent_wavefunction(xb.at(j), alphas_b[k]);
    const int blocks = row_blocks(xa.count);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < blocks; ++b) {
        const int i0 = b * kRowBlock, rows = std::min(kRowBlock, xa.count - i0);
        ColMatrix ua(rows, K);
        for (int k = 0; k < K; ++k)
            for (int r = 0; r < rows; ++r) ua(r, k) = weights[k] * coherent_wavefunction(xa.at(i0 + r), alphas_a[k]);
        result.block(i0, 0, rows, xb.count).noalias() = ua * ub.transpose();
    }
    return out;
}

ComplexMatrix overlap_matrix(std::span<const cplx> alphas, int num_modes, std::span<const int> selected) {
    if (num_modes <= 0 || alphas.size() % num_modes != 0)
        throw ModeMismatch("overlap_matrix: amplitude table does not match the mode count");
    const int K = static_cast<int>(alphas.size() / num_modes);
    ComplexMatrix out(K, K);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < K; ++l) {
            cplx exponent = 0.0;
            for (int n : selected) {
                const cplx a = alphas[static_cast<std::size_t>(k) * num_modes + n];
                const cplx b = alphas[static_cast<std::size_t>(l) * num_modes + n];
                exponent += -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b;
            }
            out(k, l) = std::exp(exponent);
        }
    }
    return out;
}

}  // namespace parallel
}  // namespace hq
