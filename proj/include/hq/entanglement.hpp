#pragma once

// Bipartite entanglement of pure multimode superpositions.

#include <string>
#include <vector>

#include "hq/phase_space.hpp"
#include "hq/superposition.hpp"

namespace hq {

enum class SchmidtMethod { gram, grid_svd };
std::string to_string(SchmidtMethod m);

struct SchmidtSpectrum {
    std::vector<double> lambdas;  // descending, nonnegative, sum of squares 1
    double entropy = 0.0;         // bits
    double schmidt_number = 1.0;
    SchmidtMethod method = SchmidtMethod::gram;
    double residual = 0.0;        // |1 - sum lambda^2| before renormalization
    double trace_residual = 0.0;  // gram: |1 - tr(T G)|
};

struct EntropyNumber {
    double entropy = 0.0;
    double schmidt_number = 1.0;
};

/// S = -sum l^2 log2 l^2, D = 1 / sum l^4, after renormalizing to sum l^2 = 1.
/// Throws BadSpectrum for negative entries or a residual above 1e-6.
EntropyNumber entropy_and_schmidt_number(const std::vector<double>& lambdas);

/// Exact finite-rank spectrum: lambda^2 are the eigenvalues of T G with
///   T_kl = c_k conj(c_l) prod_{n not in left} <alpha_{n,l}|alpha_{n,k}>,
///   G_lm = prod_{n in left} <alpha_{n,l}|alpha_{n,m}>,
/// evaluated as the Hermitian matrix G^{1/2} T G^{1/2}.
SchmidtSpectrum schmidt_gram(const MultimodeSuperposition& state, const std::vector<int>& left_modes);

/// Singular values of psi(X_a, X_b) sqrt(dXa dXb), renormalized. Throws
/// GridTooCoarse if the field does not vanish on the boundary or the
/// renormalization correction exceeds 1e-4.
SchmidtSpectrum schmidt_grid_svd(const QuadratureField& field);

/// Grid with step `step` covering every branch of `modes`.
Grid1D schmidt_grid(const MultimodeSuperposition& state, int mode, double step = 0.1);

}  // namespace hq
