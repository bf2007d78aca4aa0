#pragma once

// Finite superpositions of multimode coherent states,
//   |psi> = sum_k c_k prod_n |alpha_{n,k}>,
// and the exact single-mode algebra built on the coherent overlap
//   <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
// Quadrature convention: x = (a + a^dag)/sqrt(2), vacuum variance 1/2.

#include <complex>
#include <optional>
#include <vector>

#include "hq/quadrature.hpp"

namespace hq {

/// One product-of-coherent-states term. `alphas` is aligned with the owning
/// state's mode list.
struct Branch {
    cplx weight;
    double excitation_time = 0.0;
    std::vector<cplx> alphas;
};

struct MultimodeSuperposition {
    std::vector<int> modes;
    std::vector<Branch> branches;
    double norm_residual = 0.0;  // |1 - <psi|psi>| after the last normalize
    double raw_norm = 1.0;       // sqrt(<psi|psi>) before the last normalize

    std::size_t mode_index(int mode) const;  // throws ModeMismatch
    std::size_t size() const { return branches.size(); }
};

/// Validates that every branch carries exactly one amplitude per mode.
void check_layout(const MultimodeSuperposition& state);

cplx coherent_overlap(cplx a, cplx b);
cplx branch_overlap(const Branch& a, const Branch& b);

/// <a|b>; throws ModeMismatch unless both mode lists are identical.
cplx overlap(const MultimodeSuperposition& a, const MultimodeSuperposition& b);
double norm_squared(const MultimodeSuperposition& state);

/// Scales weights by 1/sqrt(<psi|psi>); throws ZeroNorm for a vanishing norm.
MultimodeSuperposition normalize(MultimodeSuperposition state);

struct SelectedMode {
    MultimodeSuperposition state;  // single-mode, normalized
    bool exact_reduction = false;  // other modes branch-independent within 1e-12
};

/// Drops every other mode's kernel: sum_k c_k |alpha_{mode,k}>, renormalized.
SelectedMode select_mode(const MultimodeSuperposition& state, int mode);

/// Largest |alpha_{n,k} - alpha_{n,0}| across branches for one mode.
double alpha_spread(const MultimodeSuperposition& state, std::size_t mode_index);

struct FockExpansion {
    std::vector<cplx> coefficients;  // c_0 .. c_cutoff
    double residual = 0.0;           // 1 - sum |c_m|^2 / <psi|psi>
};

/// Number-basis coefficients of a single-mode state, log-domain factorials.
/// Throws CutoffTooSmall when the residual exceeds 1e-8 unless allow_truncation.
FockExpansion fock_coefficients(const MultimodeSuperposition& state, int cutoff,
                                bool allow_truncation = false);

/// Cutoff that keeps a single-mode state's truncation residual negligible.
int suggested_cutoff(const MultimodeSuperposition& state);

struct LadderMoments {
    cplx a;       // <a>
    cplx a2;      // <a^2>
    double n = 0; // <a^dag a>
};

/// Analytic moments of a normalized single-mode state from branch overlaps.
LadderMoments ladder_moments(const MultimodeSuperposition& state);
/// Same moments from a number-basis expansion.
LadderMoments ladder_moments(const FockExpansion& fock);

struct QuadratureVariance {
    double theta = 0.0;     // X_theta = x cos(theta) + p sin(theta), theta in [0, pi)
    double variance = 0.5;
};

QuadratureVariance variance_from_moments(const LadderMoments& m);
double quadrature_variance(const LadderMoments& m, double theta);

/// Minimum rotated-quadrature variance of a single-mode state (MultiMode otherwise).
QuadratureVariance quadrature_variance_min(const MultimodeSuperposition& state);

}  // namespace hq
