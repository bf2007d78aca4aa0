#pragma once

// Parametric time-dependent inputs of a simulation: pulse envelope, resonance
// detuning, and per-harmonic dipole responses. Time is measured in
// fundamental optical cycles; only envelope-scale dependence enters.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hq/quadrature.hpp"

namespace hq {

enum class EnvelopeShape { flat, sin2, gaussian };

struct EnvelopeSpec {
    EnvelopeShape shape = EnvelopeShape::flat;
    double t_start = 0.0;
    double t_end = 1.0;
    double peak = 1.0;
    double gaussian_fwhm = 0.0;  // gaussian only, centred on the window midpoint

    double duration() const { return t_end - t_start; }
    double midpoint() const { return 0.5 * (t_start + t_end); }
};

double envelope_eval(const EnvelopeSpec& spec, double t);
double envelope_derivative(const EnvelopeSpec& spec, double t);

/// stark:  delta(t) = delta0 - stark_coeff * f(t)^2
/// linear: delta(t) = linear_rate * (t - linear_center), a synthetic sweep
enum class DetuningModel { stark, linear };

struct DetuningSpec {
    DetuningModel model = DetuningModel::stark;
    double delta0 = 0.0;
    double stark_coeff = 0.0;
    double linear_rate = 0.0;
    double linear_center = 0.0;
};

double detuning_eval(const DetuningSpec& spec, const EnvelopeSpec& envelope, double t);
/// Analytic time derivative of detuning_eval.
double detuning_rate(const DetuningSpec& spec, const EnvelopeSpec& envelope, double t);

/// One harmonic's slowly varying dipole amplitude: amplitude * f(t)^envelope_power.
struct DipoleEntry {
    int order = 3;
    std::complex<double> amplitude{0.0, 0.0};
    double envelope_power = 3.0;
};

struct TransitionDipole {
    std::complex<double> amplitude{1.0, 0.0};
    double envelope_power = 0.0;
};

struct DipoleModel {
    std::vector<DipoleEntry> gg;  // dressed ground state
    std::vector<DipoleEntry> ee;  // dressed excited state
    TransitionDipole eg;          // resonant transition element

    const DipoleEntry* find(std::vector<DipoleEntry> const& set, int order) const;
};

enum class DipoleChannel { gg, ee, eg };

/// Throws UnknownHarmonic when (channel, n) has no entry; n is ignored for eg.
std::complex<double> dipole_eval(const DipoleModel& model, const EnvelopeSpec& envelope,
                                 DipoleChannel channel, int n, double t);

enum class ResonanceMode { continuous, freeman };

/// Overrides for the stationary-phase (Freeman) builder. Each is optional;
/// without them crossings come from the detuning model and weights from the
/// stationary-phase coefficients.
struct FreemanControls {
    /// Explicit crossing times, replacing the sign-change search.
    std::vector<double> crossing_times;
    /// Crossing times located where N_mode(t) reaches each value.
    struct PhotonCrossings {
        int mode = 3;
        std::vector<double> values;
    };
    std::optional<PhotonCrossings> crossing_photons;
    /// Replaces all branch phases by (k-1)*relative_phase.
    std::optional<double> relative_phase;
    /// Forces |C_k| equal across crossings.
    bool equal_magnitudes = false;
};

struct Discretization {
    int num_nodes = 64;
    QuadratureRule quadrature = QuadratureRule::gauss_legendre;
    double convergence_tol = 1e-10;
    int max_nodes = 4096;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::vector<int> modes;
    EnvelopeSpec envelope;
    DetuningSpec detuning;
    DipoleModel dipoles;
    std::map<int, double> photon_targets;  // n -> N_n(t_end)
    ResonanceMode resonance_mode = ResonanceMode::continuous;
    std::optional<int> resonant_harmonic;  // defaults to modes.front()
    FreemanControls freeman;
    Discretization discretization;

    int resonant_order() const { return resonant_harmonic.value_or(modes.front()); }
    bool has_mode(int n) const;
};

/// Parses and validates; ConfigError messages name the offending key.
/// Photon targets are recorded but not applied (see calibrate_photon_targets).
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig parse_scenario_file(const std::string& path);

/// Canonical serialisation; parse_scenario(to_json(c)) reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);

std::string to_string(EnvelopeShape shape);
std::string to_string(ResonanceMode mode);
std::string to_string(QuadratureRule rule);

}  // namespace hq
