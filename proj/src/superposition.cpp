#include "hq/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hq/errors.hpp"

namespace hq {

std::size_t MultimodeSuperposition::mode_index(int mode) const {
    auto it = std::find(modes.begin(), modes.end(), mode);
    if (it == modes.end()) throw ModeMismatch("mode " + std::to_string(mode) + " is not part of the state");
    return static_cast<std::size_t>(it - modes.begin());
}

void check_layout(const MultimodeSuperposition& state) {
    for (const auto& b : state.branches)
        if (b.alphas.size() != state.modes.size())
            throw ModeMismatch("branch amplitude count does not match the mode list");
}

cplx coherent_overlap(cplx a, cplx b) {
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

cplx branch_overlap(const Branch& a, const Branch& b) {
    cplx prod = 1.0;
    for (std::size_t n = 0; n < a.alphas.size(); ++n) prod *= coherent_overlap(a.alphas[n], b.alphas[n]);
    return prod;
}

cplx overlap(const MultimodeSuperposition& a, const MultimodeSuperposition& b) {
    if (a.modes != b.modes) throw ModeMismatch("overlap between states with different mode lists");
    check_layout(a);
    check_layout(b);
    cplx sum = 0.0;
    for (const auto& bk : a.branches)
        for (const auto& bl : b.branches) sum += std::conj(bk.weight) * bl.weight * branch_overlap(bk, bl);
    return sum;
}

double norm_squared(const MultimodeSuperposition& state) { return overlap(state, state).real(); }

MultimodeSuperposition normalize(MultimodeSuperposition state) {
    check_layout(state);
    double n2 = 0.0, magnitude = 0.0;
    for (const auto& bk : state.branches) {
        for (const auto& bl : state.branches) {
            const cplx term = std::conj(bk.weight) * bl.weight * branch_overlap(bk, bl);
            n2 += term.real();
            magnitude += std::abs(term);
        }
    }
    // Relative guard: catastrophic cancellation leaves a residue of order eps * magnitude.
    if (!(n2 > 1e-300) || n2 <= 1e-13 * magnitude)
        throw ZeroNorm("state norm vanishes (<psi|psi> = " + std::to_string(n2) + ")");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& b : state.branches) b.weight *= scale;
    state.raw_norm = std::sqrt(n2);
    state.norm_residual = std::abs(1.0 - norm_squared(state));
    return state;
}

double alpha_spread(const MultimodeSuperposition& state, std::size_t mode_index) {
    double spread = 0.0;
    if (state.branches.empty()) return spread;
    const cplx ref = state.branches.front().alphas[mode_index];
    for (const auto& b : state.branches) spread = std::max(spread, std::abs(b.alphas[mode_index] - ref));
    return spread;
}

SelectedMode select_mode(const MultimodeSuperposition& state, int mode) {
    check_layout(state);
    const std::size_t idx = state.mode_index(mode);
    SelectedMode out;
    out.exact_reduction = true;
    for (std::size_t n = 0; n < state.modes.size(); ++n)
        if (n != idx && alpha_spread(state, n) >= 1e-12) out.exact_reduction = false;
    MultimodeSuperposition single;
    single.modes = {mode};
    single.branches.reserve(state.size());
    for (const auto& b : state.branches) single.branches.push_back({b.weight, b.excitation_time, {b.alphas[idx]}});
    out.state = normalize(std::move(single));
    return out;
}

namespace {

void require_single_mode(const MultimodeSuperposition& state) {
    if (state.modes.size() != 1) throw MultiMode("operation needs a single-mode state");
    check_layout(state);
}

}  // namespace

FockExpansion fock_coefficients(const MultimodeSuperposition& state, int cutoff, bool allow_truncation) {
    require_single_mode(state);
    if (cutoff < 1) throw ConfigError("Fock cutoff must be >= 1");
    FockExpansion out;
    out.coefficients.assign(cutoff + 1, cplx{});
    for (const auto& b : state.branches) {
        const cplx alpha = b.alphas[0];
        const double r = std::abs(alpha);
        if (r == 0.0) {
            out.coefficients[0] += b.weight;
            continue;
        }
        const double log_r = std::log(r), phase = std::arg(alpha), half_n = -0.5 * r * r;
        for (int m = 0; m <= cutoff; ++m) {
            const double log_mag = half_n + m * log_r - 0.5 * std::lgamma(m + 1.0);
            out.coefficients[m] += b.weight * std::polar(std::exp(log_mag), m * phase);
        }
    }
    double captured = 0.0;
    for (const auto& c : out.coefficients) captured += std::norm(c);
    out.residual = 1.0 - captured / norm_squared(state);
    if (!allow_truncation && out.residual > 1e-8)
        throw CutoffTooSmall("Fock cutoff " + std::to_string(cutoff) + " leaves residual " +
                                 std::to_string(out.residual),
                             out.residual);
    return out;
}

int suggested_cutoff(const MultimodeSuperposition& state) {
    require_single_mode(state);
    double n_max = 0.0;
    for (const auto& b : state.branches) n_max = std::max(n_max, std::norm(b.alphas[0]));
    return static_cast<int>(std::ceil(n_max + 10.0 * std::sqrt(n_max) + 20.0));
}

LadderMoments ladder_moments(const MultimodeSuperposition& state) {
    require_single_mode(state);
    LadderMoments m;
    cplx n_acc = 0.0, norm_acc = 0.0;
    for (const auto& bk : state.branches) {
        for (const auto& bl : state.branches) {
            const cplx ak = bk.alphas[0], al = bl.alphas[0];
            const cplx w = std::conj(bk.weight) * bl.weight * coherent_overlap(ak, al);
            m.a += w * al;
            m.a2 += w * al * al;
            n_acc += w * std::conj(ak) * al;
            norm_acc += w;
        }
    }
    const double norm = norm_acc.real();
    m.a /= norm;
    m.a2 /= norm;
    m.n = n_acc.real() / norm;
    return m;
}

LadderMoments ladder_moments(const FockExpansion& fock) {
    LadderMoments m;
    const auto& c = fock.coefficients;
    const std::size_t size = c.size();
    for (std::size_t k = 0; k < size; ++k) {
        m.n += k * std::norm(c[k]);
        if (k + 1 < size) m.a += std::conj(c[k]) * c[k + 1] * std::sqrt(k + 1.0);
        if (k + 2 < size) m.a2 += std::conj(c[k]) * c[k + 2] * std::sqrt((k + 1.0) * (k + 2.0));
    }
    return m;
}

double quadrature_variance(const LadderMoments& m, double theta) {
    const cplx z = m.a2 - m.a * m.a;
    return 0.5 + (m.n - std::norm(m.a)) + (z * std::polar(1.0, -2.0 * theta)).real();
}

QuadratureVariance variance_from_moments(const LadderMoments& m) {
    const cplx z = m.a2 - m.a * m.a;
    QuadratureVariance out;
    out.variance = 0.5 + (m.n - std::norm(m.a)) - std::abs(z);
    // Re(z e^{-2i theta}) = -|z| at 2 theta = arg z + pi.
    double theta = 0.5 * (std::arg(z) + std::numbers::pi);
    theta = std::fmod(theta, std::numbers::pi);
    if (theta < 0.0) theta += std::numbers::pi;
    out.theta = theta;
    return out;
}

QuadratureVariance quadrature_variance_min(const MultimodeSuperposition& state) {
    return variance_from_moments(ladder_moments(state));
}

}  // namespace hq
