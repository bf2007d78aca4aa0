#include <cmath>
#include <numbers>

#include "hq/errors.hpp"
#include "hq/kernels.hpp"

namespace hq {

namespace {
const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
}

cplx coherent_wavefunction(double x, cplx alpha) {
    const double re = alpha.real(), im = alpha.imag();
    const double u = x - std::numbers::sqrt2 * re;
    return kPiQuarter * std::exp(cplx{-0.5 * u * u, std::numbers::sqrt2 * im * x - re * im});
}

cplx wigner_cross_kernel(double x, double p, cplx ak, cplx al) {
    const cplx b = cplx{x, p} / std::numbers::sqrt2;
    const cplx e = -2.0 * std::norm(b) + 2.0 * b * std::conj(al) + 2.0 * std::conj(b) * ak -
                   0.5 * std::norm(ak) - 0.5 * std::norm(al) - std::conj(al) * ak;
    return std::exp(e) / std::numbers::pi;
}

namespace serial {

ComplexMatrix wigner(const ModeBranches& br, const Grid1D& x, const Grid1D& p) {
    ComplexMatrix out(x.count, p.count);
    const std::size_t K = br.weights.size();
    for (int i = 0; i < x.count; ++i) {
        for (int j = 0; j < p.count; ++j) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t l = 0; l < K; ++l)
                    sum += br.weights[k] * std::conj(br.weights[l]) *
                           wigner_cross_kernel(x.at(i), p.at(j), br.alphas[k], br.alphas[l]);
            out(i, j) = sum;
        }
    }
    return out;
}

std::vector<cplx> wavefunction_1d(const ModeBranches& br, const Grid1D& x) {
    std::vector<cplx> out(x.count);
    for (int i = 0; i < x.count; ++i) {
        cplx sum = 0.0;
        for (std::size_t k = 0; k < br.weights.size(); ++k)
            sum += br.weights[k] * coherent_wavefunction(x.at(i), br.alphas[k]);
        out[i] = sum;
    }
    return out;
}

ComplexMatrix wavefunction_2d(std::span<const cplx> weights, std::span<const cplx> alphas_a,
                              std::span<const cplx> alphas_b, const Grid1D& xa, const Grid1D& xb) {
    ComplexMatrix out(xa.count, xb.count);
    for (int i = 0; i < xa.count; ++i) {
        for (int j = 0; j < xb.count; ++j) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k)
                sum += weights[k] * coherent_wavefunction(xa.at(i), alphas_a[k]) *
                       coherent_wavefunction(xb.at(j), alphas_b[k]);
            out(i, j) = sum;
        }
    }
    return out;
}

ComplexMatrix overlap_matrix(std::span<const cplx> alphas, int num_modes, std::span<const int> selected) {
    if (num_modes <= 0 || alphas.size() % num_modes != 0)
        throw ModeMismatch("overlap_matrix: amplitude table does not match the mode count");
    const int K = static_cast<int>(alphas.size() / num_modes);
    ComplexMatrix out(K, K);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < K; ++l) {
            cplx prod = 1.0;
            for (int n : selected) {
                const cplx a = alphas[static_cast<std::size_t>(k) * num_modes + n];
                const cplx b = alphas[static_cast<std::size_t>(l) * num_modes + n];
                prod *= std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
            }
            out(k, l) = prod;
        }
    }
    return out;
}

}  // namespace serial
}  // namespace hq
