#pragma once

#include <complex>
#include <map>
#include <vector>

#include "hq/scenario.hpp"

namespace hq {

/// Coherent amplitudes of every mode for one excitation history: ground-state
/// driving on [t_start, t_prime], excited-state driving on [t_prime, t_final].
struct AmplitudeSet {
    double t_prime = 0.0;
    double t_final = 0.0;
    std::map<int, cplx> alphas;
};

/// Integral of one dipole channel over [t1, t2].
cplx dipole_integral(const ScenarioConfig& config, DipoleChannel channel, int n, double t1, double t2);

/// alpha_n(t') = -i * int_{t_start}^{t'} x_gg,n.
cplx alpha_ground(const ScenarioConfig& config, int n, double t_prime);

/// alpha_n(t, t') = -i * [int_{t_start}^{t'} x_gg,n + int_{t'}^{t} x_ee,n].
cplx alpha_branch(const ScenarioConfig& config, int n, double t_final, double t_prime);

AmplitudeSet amplitude_set(const ScenarioConfig& config, double t_final, double t_prime);

/// N_n(T) = |alpha_ground(n, T)|^2.
double mean_photon_number(const ScenarioConfig& config, int n, double T);

/// Rescales ground-state dipole amplitudes so every photon target is met at
/// t_end. Idempotent. Throws ConfigError when a positive target has a
/// vanishing dipole.
ScenarioConfig calibrate_photon_targets(ScenarioConfig config);

struct AmplitudeRow {
    double t_prime;
    int n;
    cplx alpha;
};

/// alpha_ground sampled on `count` evenly spaced excitation times per mode.
std::vector<AmplitudeRow> amplitude_table(const ScenarioConfig& config, int count);

}  // namespace hq
