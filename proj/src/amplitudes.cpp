#include "hq/amplitudes.hpp"

#include <cmath>

#include "hq/errors.hpp"

namespace hq {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

double tolerance_for(QuadratureRule rule) {
    return rule == QuadratureRule::gauss_legendre ? 1e-13 : 1e-10;
}

void check_window(const ScenarioConfig& config, double t, const char* what) {
    const auto& e = config.envelope;
    if (t < e.t_start || t > e.t_end)
        throw InvalidTimeOrder(std::string(what) + " = " + std::to_string(t) + " lies outside the pulse window");
}

}  // namespace

cplx dipole_integral(const ScenarioConfig& config, DipoleChannel channel, int n, double t1, double t2) {
    // Resolves the entry up front so a missing harmonic is reported even for empty intervals.
    (void)dipole_eval(config.dipoles, config.envelope, channel, n, t1);
    const auto& model = config.dipoles;
    const auto& env = config.envelope;
    return integral([&](double t) { return dipole_eval(model, env, channel, n, t); }, t1, t2,
                    config.discretization.quadrature, tolerance_for(config.discretization.quadrature));
}

cplx alpha_ground(const ScenarioConfig& config, int n, double t_prime) {
    check_window(config, t_prime, "t_prime");
    return kMinusI * dipole_integral(config, DipoleChannel::gg, n, config.envelope.t_start, t_prime);
}

cplx alpha_branch(const ScenarioConfig& config, int n, double t_final, double t_prime) {
    if (t_prime > t_final) throw InvalidTimeOrder("alpha_branch requires t_prime <= t_final");
    check_window(config, t_prime, "t_prime");
    check_window(config, t_final, "t_final");
    const cplx ground = dipole_integral(config, DipoleChannel::gg, n, config.envelope.t_start, t_prime);
    const cplx excited = dipole_integral(config, DipoleChannel::ee, n, t_prime, t_final);
    return kMinusI * (ground + excited);
}

AmplitudeSet amplitude_set(const ScenarioConfig& config, double t_final, double t_prime) {
    AmplitudeSet set{t_prime, t_final, {}};
    for (int n : config.modes) set.alphas[n] = alpha_branch(config, n, t_final, t_prime);
    return set;
}

double mean_photon_number(const ScenarioConfig& config, int n, double T) {
    return std::norm(alpha_ground(config, n, T));
}

ScenarioConfig calibrate_photon_targets(ScenarioConfig config) {
    for (const auto& [n, target] : config.photon_targets) {
        const double current = mean_photon_number(config, n, config.envelope.t_end);
        for (auto& entry : config.dipoles.gg) {
            if (entry.order != n) continue;
            if (current == 0.0) {
                if (target == 0.0) break;
                throw ConfigError("key 'photon_targets." + std::to_string(n) +
                                  "' cannot be met: the gg dipole integrates to zero");
            }
            entry.amplitude *= std::sqrt(target / current);
        }
    }
    return config;
}

std::vector<AmplitudeRow> amplitude_table(const ScenarioConfig& config, int count) {
    std::vector<AmplitudeRow> rows;
    const auto& e = config.envelope;
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? e.t_end : e.t_start + e.duration() * i / (count - 1);
        for (int n : config.modes) rows.push_back({t, n, alpha_ground(config, n, t)});
    }
    return rows;
}

}  // namespace hq
