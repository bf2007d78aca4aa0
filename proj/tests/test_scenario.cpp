#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "hq/errors.hpp"
#include "hq/scenario.hpp"
#include "oracles.hpp"

using namespace hq;
using nlohmann::json;

namespace {

json base_doc() {
    return json::parse(R"({
      "modes": [3, 5],
      "envelope": {"shape": "sin2", "t_start": 0, "t_end": 100},
      "detuning": {"delta0": -0.5, "stark_coeff": -1},
      "dipoles": {"gg": [{"n": 3, "amplitude": [1, 0], "power": 3}, {"n": 5, "amplitude": [0, 2], "power": 0}],
                  "ee": [{"n": 3, "amplitude": [0, 0]}],
                  "eg": {"amplitude": [1, 0]}},
      "photon_targets": {"3": 25},
      "resonance_mode": "freeman",
      "discretization": {"num_nodes": 32, "quadrature": "trapezoid", "convergence_tol": 1e-9}
    })");
}

std::string error_of(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("envelope shapes") {
    EnvelopeSpec flat{EnvelopeShape::flat, 0.0, 100.0, 1.0, 0.0};
    CHECK(envelope_eval(flat, 50.0) == 1.0);
    CHECK(envelope_eval(flat, 101.0) == 0.0);
    EnvelopeSpec s2{EnvelopeShape::sin2, 0.0, 100.0, 1.0, 0.0};
    CHECK(envelope_eval(s2, 50.0) == doctest::Approx(1.0));
    CHECK(envelope_eval(s2, 25.0) == doctest::Approx(0.5));
    CHECK(envelope_eval(s2, 0.0) == 0.0);
    CHECK(envelope_eval(s2, 100.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(envelope_eval(s2, -3.0) == 0.0);
    for (double s : {0.1, 7.3, 33.0, 49.9}) CHECK(envelope_eval(s2, 50.0 - s) == doctest::Approx(envelope_eval(s2, 50.0 + s)).epsilon(1e-15));
    EnvelopeSpec g{EnvelopeShape::gaussian, 0.0, 100.0, 2.0, 20.0};
    CHECK(envelope_eval(g, 50.0) == doctest::Approx(2.0));
    CHECK(envelope_eval(g, 60.0) == doctest::Approx(1.0));
    for (const auto& e : {s2, g})
        for (double t : {13.0, 42.0, 77.7}) {
            const double h = 1e-5;
            const double fd = (envelope_eval(e, t + h) - envelope_eval(e, t - h)) / (2 * h);
            CHECK(envelope_derivative(e, t) == doctest::Approx(fd).epsilon(1e-7));
        }
}

TEST_CASE("detuning model") {
    EnvelopeSpec flat{EnvelopeShape::flat, 0.0, 100.0, 1.0, 0.0};
    CHECK(detuning_eval({DetuningModel::stark, 0.0, 0.0}, flat, 12.0) == 0.0);
    CHECK(detuning_eval({DetuningModel::stark, -0.5, -1.0}, flat, 12.0) == doctest::Approx(0.5));
    DetuningSpec lin{DetuningModel::linear, 0.0, 0.0, 0.3, 40.0};
    CHECK(detuning_eval(lin, flat, 50.0) == doctest::Approx(3.0));
    CHECK(detuning_rate(lin, flat, 10.0) == doctest::Approx(0.3));
    EnvelopeSpec s2{EnvelopeShape::sin2, 0.0, 100.0, 1.0, 0.0};
    DetuningSpec st{DetuningModel::stark, -0.5, -1.0};
    for (double t : {20.0, 45.0, 80.0}) {
        const double h = 1e-5;
        const double fd = (detuning_eval(st, s2, t + h) - detuning_eval(st, s2, t - h)) / (2 * h);
        CHECK(detuning_rate(st, s2, t) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("dipole evaluation") {
    const ScenarioConfig c = parse_scenario(base_doc());
    EnvelopeSpec flat{EnvelopeShape::flat, 0.0, 100.0, 1.0, 0.0};
    CHECK(dipole_eval(c.dipoles, flat, DipoleChannel::gg, 3, 50.0) == cplx{1.0, 0.0});
    CHECK(dipole_eval(c.dipoles, flat, DipoleChannel::ee, 3, 50.0) == cplx{0.0, 0.0});
    CHECK(dipole_eval(c.dipoles, c.envelope, DipoleChannel::gg, 5, 10.0) == cplx{0.0, 2.0});
    CHECK(dipole_eval(c.dipoles, c.envelope, DipoleChannel::eg, 99, 50.0) == cplx{1.0, 0.0});
    CHECK_THROWS_AS(dipole_eval(c.dipoles, c.envelope, DipoleChannel::gg, 7, 10.0), UnknownHarmonic);
    // ee defaults to zero for modes without an entry
    CHECK(dipole_eval(c.dipoles, c.envelope, DipoleChannel::ee, 5, 10.0) == cplx{0.0, 0.0});
}

TEST_CASE("parse and canonical round trip") {
    const ScenarioConfig c = parse_scenario(base_doc());
    CHECK(c.modes == std::vector<int>{3, 5});
    CHECK(c.resonance_mode == ResonanceMode::freeman);
    CHECK(c.discretization.quadrature == QuadratureRule::trapezoid);
    CHECK(c.photon_targets.at(3) == 25.0);
    CHECK(c.resonant_order() == 3);
    const json once = to_json(c);
    CHECK(to_json(parse_scenario(once)) == once);
}

TEST_CASE("validation errors name the key") {
    json d = base_doc();
    d["modes"] = json::array();
    CHECK(error_of(d).find("modes") != std::string::npos);
    d = base_doc();
    d["modes"] = {3, 4};
    CHECK(error_of(d).find("modes.1") != std::string::npos);
    d = base_doc();
    d["envelope"]["colour"] = 1;
    CHECK(error_of(d).find("envelope.colour") != std::string::npos);
    d = base_doc();
    d["envelope"]["t_end"] = -1;
    CHECK(error_of(d).find("envelope.t_end") != std::string::npos);
    d = base_doc();
    d["modes"] = {3, 5, 7};
    CHECK(error_of(d).find("dipoles.gg") != std::string::npos);
    d = base_doc();
    d["discretization"]["num_nodes"] = 1;
    CHECK(error_of(d).find("discretization.num_nodes") != std::string::npos);
    d = base_doc();
    d["discretization"]["convergence_tol"] = 0;
    CHECK(error_of(d).find("convergence_tol") != std::string::npos);
    d = base_doc();
    d["dipoles"]["gg"][0]["amplitude"] = {1};
    CHECK(error_of(d).find("dipoles.gg.0.amplitude") != std::string::npos);
    d = base_doc();
    d["resonance_mode"] = "sometimes";
    CHECK(error_of(d).find("resonance_mode") != std::string::npos);
    d = base_doc();
    d["photon_targets"]["9"] = 1;
    CHECK(error_of(d).find("photon_targets") != std::string::npos);
}

TEST_CASE("bundled configurations parse") {
    for (const char* name : {"fig3b", "fig3c", "fig3d", "fig3e", "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b"}) {
        CAPTURE(name);
        const ScenarioConfig c = parse_scenario_file(std::string(HQ_CONFIG_DIR) + "/" + name + ".json");
        CHECK(c.name == name);
    }
}
