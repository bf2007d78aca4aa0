#include "hq/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Dense>

#include "hq/errors.hpp"
#include "hq/kernels.hpp"

namespace hq {

namespace {

constexpr double kClip = 1e-10;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace

std::string to_string(SchmidtMethod m) { return m == SchmidtMethod::gram ? "gram" : "grid_svd"; }

EntropyNumber entropy_and_schmidt_number(const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw BadSpectrum("empty Schmidt spectrum");
    double total = 0.0;
    for (double l : lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw BadSpectrum("Schmidt coefficients must be finite and nonnegative");
        total += l * l;
    }
    if (std::abs(1.0 - total) > 1e-6)
        throw BadSpectrum("sum of squared Schmidt coefficients is " + std::to_string(total));
    EntropyNumber out{0.0, 0.0};
    double purity = 0.0;
    for (double l : lambdas) {
        const double p = l * l / total;
        if (p > 0.0) out.entropy -= p * std::log2(p);
        purity += p * p;
    }
    out.entropy = std::max(out.entropy, 0.0);
    out.schmidt_number = 1.0 / purity;
    return out;
}

SchmidtSpectrum schmidt_gram(const MultimodeSuperposition& state, const std::vector<int>& left_modes) {
    check_layout(state);
    const std::set<int> left(left_modes.begin(), left_modes.end());
    if (left.empty() || left.size() != left_modes.size() || left.size() >= state.modes.size())
        throw BadBipartition("left modes must be a proper nonempty subset without repeats");
    std::vector<int> left_idx, right_idx;
    for (int m : left) {
        if (std::find(state.modes.begin(), state.modes.end(), m) == state.modes.end())
            throw BadBipartition("mode " + std::to_string(m) + " is not part of the state");
    }
    for (std::size_t n = 0; n < state.modes.size(); ++n)
        (left.count(state.modes[n]) ? left_idx : right_idx).push_back(static_cast<int>(n));

    const int K = static_cast<int>(state.size());
    const int M = static_cast<int>(state.modes.size());
    std::vector<cplx> table(static_cast<std::size_t>(K) * M);
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < M; ++n) table[static_cast<std::size_t>(k) * M + n] = state.branches[k].alphas[n];

    const Eigen::MatrixXcd G = to_eigen(parallel::overlap_matrix(table, M, left_idx));
    const Eigen::MatrixXcd R = to_eigen(parallel::overlap_matrix(table, M, right_idx));
    Eigen::VectorXcd c(K);
    for (int k = 0; k < K; ++k) c(k) = state.branches[k].weight;
    // T_kl = c_k conj(c_l) R_lk
    const Eigen::MatrixXcd T = (c * c.adjoint()).cwiseProduct(R.transpose());

    SchmidtSpectrum out;
    out.method = SchmidtMethod::gram;
    out.trace_residual = std::abs(1.0 - (T * G).trace());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(0.5 * (G + G.adjoint()));
    if (gram.info() != Eigen::Success) throw NumericError("Gram eigen-decomposition failed");
    const Eigen::VectorXd g = gram.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd root = gram.eigenvectors() * g.asDiagonal();  // G^{1/2} up to a unitary
    const Eigen::MatrixXcd H = root.adjoint() * T * root;
    const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8) throw NonHermitianResidue("reduced density matrix asymmetry " + std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rho(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
    if (rho.info() != Eigen::Success) throw NumericError("reduced density eigen-decomposition failed");
    double total = 0.0;
    for (int i = 0; i < K; ++i) {
        double p = rho.eigenvalues()(i);
        if (p < -kClip) throw BadSpectrum("reduced density matrix has eigenvalue " + std::to_string(p));
        p = std::max(p, 0.0);
        total += p;
        out.lambdas.push_back(std::sqrt(p));
    }
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    out.residual = std::abs(1.0 - total);
    for (double& l : out.lambdas) l /= std::sqrt(total);
    const auto sd = entropy_and_schmidt_number(out.lambdas);
    out.entropy = sd.entropy;
    out.schmidt_number = sd.schmidt_number;
    return out;
}

SchmidtSpectrum schmidt_grid_svd(const QuadratureField& field) {
    if (field.grids.size() != 2) throw ModeMismatch("grid SVD needs a two-axis field");
    const int na = field.grids[0].count, nb = field.grids[1].count;
    Eigen::MatrixXcd psi(na, nb);
    double peak = 0.0, edge = 0.0;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            psi(i, j) = field.at(i, j);
            const double a2 = std::norm(psi(i, j));
            peak = std::max(peak, a2);
            if (i == 0 || j == 0 || i == na - 1 || j == nb - 1) edge = std::max(edge, a2);
        }
    if (edge > 1e-12 * peak) throw GridTooCoarse("field does not vanish on the grid boundary");
    psi *= std::sqrt(field.grids[0].step() * field.grids[1].step());

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(psi);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double total = sigma.squaredNorm();
    SchmidtSpectrum out;
    out.method = SchmidtMethod::grid_svd;
    out.residual = std::abs(1.0 - total);
    if (out.residual > 1e-4)
        throw GridTooCoarse("grid norm deviates from 1 by " + std::to_string(out.residual));
    for (int i = 0; i < sigma.size(); ++i) out.lambdas.push_back(sigma(i) / std::sqrt(total));
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    const auto sd = entropy_and_schmidt_number(out.lambdas);
    out.entropy = sd.entropy;
    out.schmidt_number = sd.schmidt_number;
    return out;
}

Grid1D schmidt_grid(const MultimodeSuperposition& state, int mode, double step) {
    const Grid1D cover = covering_grid(state, {mode}, 2);
    const int count = static_cast<int>(std::ceil((cover.max - cover.min) / step)) + 1;
    return {cover.min, cover.max, count};
}

}  // namespace hq
