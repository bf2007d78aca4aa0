#pragma once

// Assembly of the first-order excited-surface light state
//   |phi_e> = -i int dt' x_eg(t') e^{i Phi(t')} alpha_n0(t') prod_n |alpha_n(T, t')>,
// either by quadrature over the excitation time (continuous resonance) or by
// the stationary-phase sum over resonance crossings (Freeman resonances).

#include <vector>

#include "hq/scenario.hpp"
#include "hq/superposition.hpp"

namespace hq {

struct ResonanceCrossing {
    double t_k = 0.0;
    double detuning_slope = 0.0;  // d(delta)/dt at t_k
    double phase = 0.0;           // int_{t_start}^{t_k} delta
};

struct BuildReport {
    int nodes = 0;          // branches in the returned state
    double fidelity = 1.0;  // |<psi_M|psi_2M>| at acceptance (continuous only)
    double raw_norm = 0.0;  // excitation amplitude norm before normalization
    std::vector<ResonanceCrossing> crossings;
    std::vector<cplx> coefficients;  // C_k (freeman only)
};

struct BuiltState {
    MultimodeSuperposition state;  // normalized
    BuildReport report;
};

inline constexpr double kSlopeTolerance = 1e-8;
inline double root_tolerance(const ScenarioConfig& c) { return 1e-10 * c.envelope.duration(); }

/// Phi = int_{t1}^{t2} delta(tau) d tau; InvalidTimeOrder unless t1 <= t2.
double stueckelberg_phase(const ScenarioConfig& config, double t1, double t2);

/// Unnormalized M-node discretisation of the excitation-time integral, using
/// the configured rule. M = 1 is the midpoint rule.
MultimodeSuperposition discretize_continuous(const ScenarioConfig& config, int nodes);

/// Doubles the node count from discretization.num_nodes until
/// |<psi_M|psi_2M>| > 1 - convergence_tol and returns psi_M.
BuiltState build_continuous_state(const ScenarioConfig& config);

/// Simple roots of delta(t) on the pulse window from a sign-change scan plus
/// bisection. Throws NoCrossing or TangentResonance.
std::vector<ResonanceCrossing> find_resonance_crossings(const ScenarioConfig& config);

/// Crossings after freeman overrides (explicit times or photon-number
/// targets); falls back to find_resonance_crossings.
std::vector<ResonanceCrossing> resolve_crossings(const ScenarioConfig& config);

/// C_k = sqrt(-2 pi i / delta'(t_k)) x_eg(t_k) alpha_n0(t_k), principal branch.
cplx stationary_phase_coefficient(const ScenarioConfig& config, const ResonanceCrossing& crossing);

/// sum_k C_k e^{i Phi_k} prod_n |alpha_n(T, t_k)>, normalized.
BuiltState build_freeman_state(const ScenarioConfig& config);

/// Dispatches on config.resonance_mode.
BuiltState build_state(const ScenarioConfig& config);

/// Time at which N_mode(t) first reaches `photons` (bisection on the window).
double time_at_photon_number(const ScenarioConfig& config, int mode, double photons);

}  // namespace hq
