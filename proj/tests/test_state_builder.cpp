#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hq/amplitudes.hpp"
#include "hq/entanglement.hpp"
#include "hq/errors.hpp"
#include "hq/state_builder.hpp"
#include "oracles.hpp"

using namespace hq;
using nlohmann::json;

namespace {

json continuous_doc(std::vector<int> modes, double n_target) {
    json gg = json::array(), ee = json::array(), targets = json::object();
    for (int m : modes) {
        gg.push_back({{"n", m}, {"amplitude", {0.0, 1.0}}, {"power", 0.0}});
        ee.push_back({{"n", m}, {"amplitude", {0.0, 0.0}}, {"power", 0.0}});
        targets[std::to_string(m)] = n_target;
    }
    return {{"modes", modes},
            {"envelope", {{"shape", "flat"}, {"t_start", 0.0}, {"t_end", 100.0}}},
            {"dipoles", {{"gg", gg}, {"ee", ee}, {"eg", {{"amplitude", {1.0, 0.0}}}}}},
            {"photon_targets", targets},
            {"resonance_mode", "continuous"},
            {"discretization", {{"num_nodes", 64}, {"max_nodes", 1024}}}};
}

json stark_doc() {
    return {{"modes", {3, 5}},
            {"envelope", {{"shape", "sin2"}, {"t_start", 0.0}, {"t_end", 100.0}}},
            {"detuning", {{"delta0", -0.5}, {"stark_coeff", -1.0}}},
            {"dipoles",
             {{"gg", {{{"n", 3}, {"amplitude", {0.0, 1.0}}, {"power", 2.0}}, {{"n", 5}, {"amplitude", {0.0, 0.5}}, {"power", 3.0}}}},
              {"eg", {{"amplitude", {1.0, 0.0}}, {"power", 1.0}}}}},
            {"resonance_mode", "freeman"}};
}

ScenarioConfig calibrated(const json& d) { return calibrate_photon_targets(parse_scenario(d)); }

}  // namespace

TEST_CASE("stueckelberg phase") {
    json d = stark_doc();
    d["envelope"]["shape"] = "flat";
    d["detuning"] = {{"delta0", 0.25}};
    const ScenarioConfig c = parse_scenario(d);
    CHECK(stueckelberg_phase(c, 30.0, 30.0) == 0.0);
    CHECK(stueckelberg_phase(c, 10.0, 50.0) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK_THROWS_AS(stueckelberg_phase(c, 50.0, 10.0), InvalidTimeOrder);
}

TEST_CASE("resonance crossings") {
    const ScenarioConfig c = parse_scenario(stark_doc());
    const auto xs = find_resonance_crossings(c);
    REQUIRE(xs.size() == 2);
    const double t1 = oracle::bisect([](double t) { return std::pow(std::sin(std::numbers::pi * t / 100.0), 4) - 0.5; }, 1.0, 50.0);
    CHECK(xs[0].t_k == doctest::Approx(t1).epsilon(1e-9));
    CHECK(xs[0].t_k + xs[1].t_k == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(std::abs(detuning_eval(c.detuning, c.envelope, xs[0].t_k)) < root_tolerance(c));
    CHECK(xs[0].detuning_slope == doctest::Approx(-xs[1].detuning_slope).epsilon(1e-9));
    CHECK(xs[0].phase < 0.0);  // delta < 0 before the first crossing

    json none = stark_doc();
    none["detuning"] = {{"delta0", 0.3}};
    CHECK_THROWS_AS(find_resonance_crossings(parse_scenario(none)), NoCrossing);

    json lin = stark_doc();
    lin["envelope"]["shape"] = "flat";
    lin["detuning"] = {{"model", "linear"}, {"linear_rate", 0.2}, {"linear_center", 37.0}};
    const auto one = find_resonance_crossings(parse_scenario(lin));
    REQUIRE(one.size() == 1);
    CHECK(one[0].t_k == doctest::Approx(37.0).epsilon(1e-10));
    CHECK(one[0].detuning_slope == doctest::Approx(0.2));

    lin["detuning"]["linear_rate"] = 1e-9;
    CHECK_THROWS_AS(find_resonance_crossings(parse_scenario(lin)), TangentResonance);
}

TEST_CASE("continuous builder on the radial segment") {
    const ScenarioConfig c = calibrated(continuous_doc({3}, 10.0));
    const auto s = discretize_continuous(c, 48);
    const cplx aT = alpha_ground(c, 3, 100.0);
    const NodeSet rule = fixed_rule(c.discretization.quadrature, 0.0, 100.0, 48);
    const cplx ratio0 = s.branches[0].weight / (rule.weights[0] * s.branches[0].alphas[0]);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& b = s.branches[k];
        CHECK(b.excitation_time == rule.nodes[k]);
        CHECK(std::abs(b.alphas[0] - aT * b.excitation_time / 100.0) < 1e-12);
        CHECK(b.alphas[0] == alpha_branch(c, 3, 100.0, b.excitation_time));
        CHECK(std::abs(b.weight / (rule.weights[k] * b.alphas[0]) - ratio0) < 1e-12 * std::abs(ratio0));
    }
}

TEST_CASE("continuous builder convergence and metadata") {
    const ScenarioConfig c = calibrated(continuous_doc({3, 5}, 10.0));
    const BuiltState b = build_continuous_state(c);
    CHECK(b.report.fidelity > 1.0 - c.discretization.convergence_tol);
    CHECK(b.report.nodes == static_cast<int>(b.state.size()));
    CHECK(std::abs(norm_squared(b.state) - 1.0) < 1e-12);
    CHECK(b.report.raw_norm > 0.0);
    double last = 0.0;
    for (int m : {2, 4, 8, 16}) {
        const double f = std::abs(overlap(normalize(discretize_continuous(c, m)), normalize(discretize_continuous(c, 2 * m))));
        CHECK(f > last);
        last = f;
    }
    const auto sel = select_mode(b.state, 3);
    CHECK(quadrature_variance_min(sel.state).variance < 0.5);

    ScenarioConfig capped = c;
    capped.discretization.num_nodes = 2;
    capped.discretization.max_nodes = 2;
    CHECK_THROWS_AS(build_continuous_state(capped), ConvergenceFailure);
    ScenarioConfig off = c;
    off.resonant_harmonic = 7;
    CHECK_THROWS_AS(build_continuous_state(off), NoResonantMode);
    ScenarioConfig freeman = c;
    freeman.resonance_mode = ResonanceMode::freeman;
    CHECK_THROWS_AS(build_continuous_state(freeman), ConfigError);
}

TEST_CASE("single-node and identical-surface limits are separable") {
    const ScenarioConfig c = calibrated(continuous_doc({3, 5}, 25.0));
    const auto one = normalize(discretize_continuous(c, 1));
    REQUIRE(one.size() == 1);
    CHECK(schmidt_gram(one, {3}).entropy < 1e-10);

    ScenarioConfig same = c;
    same.dipoles.ee = same.dipoles.gg;
    const BuiltState b = build_continuous_state(same);
    CHECK(alpha_spread(b.state, 0) < 1e-12);
    CHECK(schmidt_gram(b.state, {3}).entropy < 1e-10);
}

TEST_CASE("freeman stationary-phase coefficients") {
    const ScenarioConfig c = parse_scenario(stark_doc());
    const BuiltState b = build_freeman_state(c);
    REQUIRE(b.state.size() == 2);
    const auto& x = b.report.crossings;
    const auto& C = b.report.coefficients;
    // Landau-Zener factor equal at symmetric crossings
    auto lz = [&](const ResonanceCrossing& r) {
        return std::sqrt(2.0 * std::numbers::pi / std::abs(r.detuning_slope)) *
               std::abs(dipole_eval(c.dipoles, c.envelope, DipoleChannel::eg, 3, r.t_k));
    };
    CHECK(lz(x[0]) == doctest::Approx(lz(x[1])).epsilon(1e-9));
    CHECK(std::abs(C[1]) / std::abs(C[0]) ==
          doctest::Approx(std::abs(alpha_ground(c, 3, x[1].t_k)) / std::abs(alpha_ground(c, 3, x[0].t_k))).epsilon(1e-9));
    // principal branch: arg sqrt(-i 2 pi / slope) = -pi/4 sign(slope)
    const cplx root0 = C[0] / (dipole_eval(c.dipoles, c.envelope, DipoleChannel::eg, 3, x[0].t_k) * alpha_ground(c, 3, x[0].t_k));
    CHECK(std::arg(root0) == doctest::Approx(-std::numbers::pi / 4 * (x[0].detuning_slope > 0 ? 1 : -1)));

    // Raw weights are C_k e^{i Phi_k} up to the common normalization.
    const cplx r0 = b.state.branches[0].weight / (C[0] * std::polar(1.0, x[0].phase));
    const cplx r1 = b.state.branches[1].weight / (C[1] * std::polar(1.0, x[1].phase));
    CHECK(std::abs(r0 - r1) < 1e-12 * std::abs(r0));

    json eq = stark_doc();
    eq["freeman"] = {{"equal_magnitudes", true}};
    const BuiltState e = build_freeman_state(parse_scenario(eq));
    CHECK(std::abs(e.state.branches[0].weight) == doctest::Approx(std::abs(e.state.branches[1].weight)).epsilon(1e-12));
}

TEST_CASE("freeman overrides reproduce the two-branch cat") {
    const ScenarioConfig c = calibrate_photon_targets(parse_scenario_file(std::string(HQ_CONFIG_DIR) + "/fig3b.json"));
    const BuiltState b = build_freeman_state(c);
    REQUIRE(b.state.size() == 2);
    CHECK(std::abs(b.state.branches[0].alphas[0] - 5.0) < 1e-9);
    CHECK(std::abs(b.state.branches[1].alphas[0] - std::sqrt(50.0)) < 1e-9);
    const cplx rel = b.state.branches[1].weight / b.state.branches[0].weight;
    CHECK(std::abs(rel - cplx{-1.0, 0.0}) < 1e-12);

    json one = stark_doc();
    one["freeman"] = {{"crossing_times", {40.0}}};
    const BuiltState s = build_freeman_state(parse_scenario(one));
    REQUIRE(s.state.size() == 1);
    CHECK(schmidt_gram(s.state, {3}).entropy < 1e-10);

    json far = stark_doc();
    far["freeman"] = {{"crossing_photons", {{"mode", 3}, {"values", {1e9}}}}};
    CHECK_THROWS_AS(build_freeman_state(parse_scenario(far)), ConfigError);

    json tangent = stark_doc();
    tangent["detuning"] = {{"delta0", 0.0}};
    tangent["freeman"] = {{"crossing_times", {40.0}}};
    CHECK_THROWS_AS(build_freeman_state(parse_scenario(tangent)), TangentResonance);
    tangent["freeman"] = {{"crossing_times", {40.0, 60.0}}, {"relative_phase", 1.0}, {"equal_magnitudes", true}};
    CHECK(build_freeman_state(parse_scenario(tangent)).state.size() == 2);
}
