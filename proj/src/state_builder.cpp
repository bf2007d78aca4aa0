#include "hq/state_builder.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "hq/amplitudes.hpp"
#include "hq/errors.hpp"

namespace hq {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_resonant_mode(const ScenarioConfig& config) {
    if (!config.has_mode(config.resonant_order()))
        throw NoResonantMode("resonant harmonic " + std::to_string(config.resonant_order()) +
                             " is not one of the modes");
}

Branch make_branch(const ScenarioConfig& config, double t_prime, cplx weight) {
    Branch b{weight, t_prime, {}};
    b.alphas.reserve(config.modes.size());
    for (int n : config.modes) b.alphas.push_back(alpha_branch(config, n, config.envelope.t_end, t_prime));
    return b;
}

}  // namespace

double stueckelberg_phase(const ScenarioConfig& config, double t1, double t2) {
    if (t1 > t2) throw InvalidTimeOrder("stueckelberg_phase requires t1 <= t2");
    const auto& d = config.detuning;
    const auto& e = config.envelope;
    return integral([&](double t) { return cplx{detuning_eval(d, e, t), 0.0}; }, t1, t2,
                    QuadratureRule::gauss_legendre, 1e-13)
        .real();
}

MultimodeSuperposition discretize_continuous(const ScenarioConfig& config, int nodes) {
    require_resonant_mode(config);
    const auto& env = config.envelope;
    const NodeSet rule = fixed_rule(config.discretization.quadrature, env.t_start, env.t_end, nodes);
    const int n0 = config.resonant_order();

    MultimodeSuperposition state;
    state.modes = config.modes;
    state.branches.resize(nodes);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < nodes; ++j) {
        try {
            const double t = rule.nodes[j];
            const cplx prefactor = -kI * dipole_eval(config.dipoles, env, DipoleChannel::eg, n0, t) *
                                   std::polar(1.0, stueckelberg_phase(config, env.t_start, t)) *
                                   alpha_ground(config, n0, t);
            state.branches[j] = make_branch(config, t, rule.weights[j] * prefactor);
        } catch (...) {
#pragma omp critical(hq_builder_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return state;
}

BuiltState build_continuous_state(const ScenarioConfig& config) {
    if (config.resonance_mode != ResonanceMode::continuous)
        throw ConfigError("build_continuous_state needs resonance_mode 'continuous'");
    const auto& disc = config.discretization;
    int nodes = disc.num_nodes;
    MultimodeSuperposition coarse = normalize(discretize_continuous(config, nodes));
    double fidelity = 0.0;
    while (2 * nodes <= disc.max_nodes) {
        MultimodeSuperposition fine = normalize(discretize_continuous(config, 2 * nodes));
        fidelity = std::abs(overlap(coarse, fine));
        if (fidelity > 1.0 - disc.convergence_tol) {
            BuiltState out{std::move(coarse), {}};
            out.report.nodes = nodes;
            out.report.fidelity = fidelity;
            out.report.raw_norm = out.state.raw_norm;
            return out;
        }
        nodes *= 2;
        coarse = std::move(fine);
    }
    throw ConvergenceFailure("excitation-time discretisation reached " + std::to_string(nodes) +
                             " nodes with fidelity " + std::to_string(fidelity));
}

std::vector<ResonanceCrossing> find_resonance_crossings(const ScenarioConfig& config) {
    const auto& env = config.envelope;
    const auto& det = config.detuning;
    auto delta = [&](double t) { return detuning_eval(det, env, t); };
    const int scan = std::max(10 * config.discretization.num_nodes, 1000);
    const double h = env.duration() / scan;
    const double tol = root_tolerance(config);

    std::vector<double> roots;
    double t_prev = env.t_start, d_prev = delta(t_prev);
    if (d_prev == 0.0) roots.push_back(t_prev);
    for (int i = 1; i <= scan; ++i) {
        const double t = i == scan ? env.t_end : env.t_start + i * h;
        const double d = delta(t);
        if (d == 0.0) {
            roots.push_back(t);
        } else if (d_prev != 0.0 && (d_prev < 0.0) != (d < 0.0)) {
            double lo = t_prev, hi = t, d_lo = d_prev;
            double mid = 0.5 * (lo + hi);
            for (int iter = 0; iter < 200; ++iter) {
                mid = 0.5 * (lo + hi);
                const double dm = delta(mid);
                if (dm == 0.0 || (std::abs(dm) < tol && hi - lo < 1e-13 * env.duration())) break;
                if ((dm < 0.0) == (d_lo < 0.0)) {
                    lo = mid;
                    d_lo = dm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(mid);
        }
        t_prev = t;
        d_prev = d;
    }
    if (roots.empty()) throw NoCrossing("detuning never changes sign on the pulse window");

    std::vector<ResonanceCrossing> out;
    for (double t : roots) {
        const double slope = detuning_rate(det, env, t);
        if (std::abs(slope) < kSlopeTolerance)
            throw TangentResonance("resonance at t = " + std::to_string(t) +
                                   " is tangent; stationary phase does not apply");
        out.push_back({t, slope, stueckelberg_phase(config, env.t_start, t)});
    }
    return out;
}

double time_at_photon_number(const ScenarioConfig& config, int mode, double photons) {
    const auto& env = config.envelope;
    const double top = mean_photon_number(config, mode, env.t_end);
    if (photons > top)
        throw ConfigError("key 'freeman.crossing_photons.values' asks for N = " + std::to_string(photons) +
                          " but mode " + std::to_string(mode) + " only reaches " + std::to_string(top));
    double lo = env.t_start, hi = env.t_end;
    while (hi - lo > 1e-14 * env.duration()) {
        const double mid = 0.5 * (lo + hi);
        if (mean_photon_number(config, mode, mid) < photons) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<ResonanceCrossing> resolve_crossings(const ScenarioConfig& config) {
    const auto& fm = config.freeman;
    std::vector<double> times = fm.crossing_times;
    if (fm.crossing_photons)
        for (double v : fm.crossing_photons->values)
            times.push_back(time_at_photon_number(config, fm.crossing_photons->mode, v));
    if (times.empty()) return find_resonance_crossings(config);

    std::vector<ResonanceCrossing> out;
    const auto& env = config.envelope;
    for (double t : times) {
        if (t < env.t_start || t > env.t_end)
            throw ConfigError("key 'freeman.crossing_times' has a time outside the pulse window");
        out.push_back({t, detuning_rate(config.detuning, env, t), stueckelberg_phase(config, env.t_start, t)});
    }
    return out;
}

cplx stationary_phase_coefficient(const ScenarioConfig& config, const ResonanceCrossing& c) {
    if (std::abs(c.detuning_slope) < kSlopeTolerance)
        throw TangentResonance("detuning slope at t = " + std::to_string(c.t_k) + " vanishes");
    const int n0 = config.resonant_order();
    const cplx root = std::sqrt(cplx{0.0, -2.0 * std::numbers::pi / c.detuning_slope});
    return root * dipole_eval(config.dipoles, config.envelope, DipoleChannel::eg, n0, c.t_k) *
           alpha_ground(config, n0, c.t_k);
}

BuiltState build_freeman_state(const ScenarioConfig& config) {
    if (config.resonance_mode != ResonanceMode::freeman)
        throw ConfigError("build_freeman_state needs resonance_mode 'freeman'");
    require_resonant_mode(config);
    const auto& fm = config.freeman;
    BuiltState out;
    out.report.crossings = resolve_crossings(config);
    const bool phases_fixed = fm.relative_phase.has_value();
    const bool need_coefficients = !(phases_fixed && fm.equal_magnitudes);

    MultimodeSuperposition state;
    state.modes = config.modes;
    for (std::size_t k = 0; k < out.report.crossings.size(); ++k) {
        const auto& c = out.report.crossings[k];
        const cplx C = need_coefficients ? stationary_phase_coefficient(config, c) : cplx{1.0, 0.0};
        out.report.coefficients.push_back(C);
        cplx weight;
        if (phases_fixed) {
            const double magnitude = fm.equal_magnitudes ? 1.0 : std::abs(C);
            weight = std::polar(magnitude, static_cast<double>(k) * *fm.relative_phase);
        } else {
            const cplx base = fm.equal_magnitudes ? (std::abs(C) > 0.0 ? C / std::abs(C) : C) : C;
            weight = base * std::polar(1.0, c.phase);
        }
        state.branches.push_back(make_branch(config, c.t_k, weight));
    }
    out.state = normalize(std::move(state));
    out.report.nodes = static_cast<int>(out.state.size());
    out.report.raw_norm = out.state.raw_norm;
    return out;
}

BuiltState build_state(const ScenarioConfig& config) {
    return config.resonance_mode == ResonanceMode::continuous ? build_continuous_state(config)
                                                              : build_freeman_state(config);
}

}  // namespace hq
