#include "hq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "hq/errors.hpp"

namespace hq {

using nlohmann::json;

namespace {

constexpr double kFourLn2 = 4.0 * std::numbers::ln2;

}  // namespace

double envelope_eval(const EnvelopeSpec& spec, double t) {
    switch (spec.shape) {
        case EnvelopeShape::flat:
            return (t >= spec.t_start && t <= spec.t_end) ? spec.peak : 0.0;
        case EnvelopeShape::sin2: {
            if (t <= spec.t_start || t >= spec.t_end) return 0.0;
            const double s = std::sin(std::numbers::pi * (t - spec.t_start) / spec.duration());
            return spec.peak * s * s;
        }
        case EnvelopeShape::gaussian: {
            const double u = t - spec.midpoint();
            return spec.peak * std::exp(-kFourLn2 * u * u / (spec.gaussian_fwhm * spec.gaussian_fwhm));
        }
    }
    return 0.0;
}

double envelope_derivative(const EnvelopeSpec& spec, double t) {
    switch (spec.shape) {
        case EnvelopeShape::flat:
            return 0.0;
        case EnvelopeShape::sin2: {
            if (t <= spec.t_start || t >= spec.t_end) return 0.0;
            const double k = std::numbers::pi / spec.duration();
            return spec.peak * k * std::sin(2.0 * k * (t - spec.t_start));
        }
        case EnvelopeShape::gaussian: {
            const double u = t - spec.midpoint();
            const double w2 = spec.gaussian_fwhm * spec.gaussian_fwhm;
            return -2.0 * kFourLn2 * u / w2 * envelope_eval(spec, t);
        }
    }
    return 0.0;
}

double detuning_eval(const DetuningSpec& spec, const EnvelopeSpec& envelope, double t) {
    if (spec.model == DetuningModel::linear) return spec.linear_rate * (t - spec.linear_center);
    const double f = envelope_eval(envelope, t);
    return spec.delta0 - spec.stark_coeff * f * f;
}

double detuning_rate(const DetuningSpec& spec, const EnvelopeSpec& envelope, double t) {
    if (spec.model == DetuningModel::linear) return spec.linear_rate;
    return -2.0 * spec.stark_coeff * envelope_eval(envelope, t) * envelope_derivative(envelope, t);
}

const DipoleEntry* DipoleModel::find(std::vector<DipoleEntry> const& set, int order) const {
    auto it = std::find_if(set.begin(), set.end(), [order](const DipoleEntry& e) { return e.order == order; });
    return it == set.end() ? nullptr : &*it;
}

std::complex<double> dipole_eval(const DipoleModel& model, const EnvelopeSpec& envelope,
                                 DipoleChannel channel, int n, double t) {
    double power = 0.0;
    std::complex<double> amplitude;
    if (channel == DipoleChannel::eg) {
        amplitude = model.eg.amplitude;
        power = model.eg.envelope_power;
    } else {
        const auto& set = channel == DipoleChannel::gg ? model.gg : model.ee;
        const DipoleEntry* entry = model.find(set, n);
        if (!entry) {
            throw UnknownHarmonic(std::string("no ") + (channel == DipoleChannel::gg ? "gg" : "ee") +
                                  " dipole entry for harmonic " + std::to_string(n));
        }
        amplitude = entry->amplitude;
        power = entry->envelope_power;
    }
    if (amplitude == std::complex<double>{}) return {};
    if (power == 0.0) return amplitude;
    return amplitude * std::pow(envelope_eval(envelope, t), power);
}

bool ScenarioConfig::has_mode(int n) const {
    return std::find(modes.begin(), modes.end(), n) != modes.end();
}

std::string to_string(EnvelopeShape shape) {
    switch (shape) {
        case EnvelopeShape::flat: return "flat";
        case EnvelopeShape::sin2: return "sin2";
        case EnvelopeShape::gaussian: return "gaussian";
    }
    return "?";
}

std::string to_string(ResonanceMode mode) {
    return mode == ResonanceMode::continuous ? "continuous" : "freeman";
}

std::string to_string(QuadratureRule rule) {
    return rule == QuadratureRule::trapezoid ? "trapezoid" : "gauss_legendre";
}

// ---------------------------------------------------------------------------
// JSON ingestion

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known) throw ConfigError("unknown key '" + where + it.key() + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + where + key + "'");
    return obj.at(key);
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("key '" + key + "' must be finite");
    return x;
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
    return v.get<int>();
}

double number_or(const json& obj, const char* key, const std::string& where, double fallback) {
    return obj.contains(key) ? as_number(obj.at(key), where + key) : fallback;
}

std::complex<double> as_complex(const json& v, const std::string& key) {
    if (v.is_number()) return {as_number(v, key), 0.0};
    if (!v.is_array() || v.size() != 2) throw ConfigError("key '" + key + "' must be [re, im]");
    return {as_number(v[0], key + ".0"), as_number(v[1], key + ".1")};
}

EnvelopeSpec parse_envelope(const json& obj) {
    const std::string w = "envelope.";
    if (!obj.is_object()) throw ConfigError("key 'envelope' must be an object");
    reject_unknown(obj, w, {"shape", "t_start", "t_end", "peak", "gaussian_fwhm"});
    EnvelopeSpec e;
    const json& shape = require(obj, "shape", w);
    if (!shape.is_string()) throw ConfigError("key 'envelope.shape' must be a string");
    const auto s = shape.get<std::string>();
    if (s == "flat") e.shape = EnvelopeShape::flat;
    else if (s == "sin2") e.shape = EnvelopeShape::sin2;
    else if (s == "gaussian") e.shape = EnvelopeShape::gaussian;
    else throw ConfigError("key 'envelope.shape' has unknown value '" + s + "'");
    e.t_start = as_number(require(obj, "t_start", w), w + "t_start");
    e.t_end = as_number(require(obj, "t_end", w), w + "t_end");
    e.peak = number_or(obj, "peak", w, 1.0);
    e.gaussian_fwhm = number_or(obj, "gaussian_fwhm", w, 0.0);
    if (!(e.t_end > e.t_start)) throw ConfigError("key 'envelope.t_end' must exceed envelope.t_start");
    if (!(e.peak > 0.0)) throw ConfigError("key 'envelope.peak' must be positive");
    if (e.shape == EnvelopeShape::gaussian && !(e.gaussian_fwhm > 0.0))
        throw ConfigError("key 'envelope.gaussian_fwhm' must be positive for a gaussian envelope");
    return e;
}

DetuningSpec parse_detuning(const json& obj) {
    const std::string w = "detuning.";
    if (!obj.is_object()) throw ConfigError("key 'detuning' must be an object");
    reject_unknown(obj, w, {"model", "delta0", "stark_coeff", "linear_rate", "linear_center"});
    DetuningSpec d;
    if (obj.contains("model")) {
        const auto m = obj.at("model").is_string() ? obj.at("model").get<std::string>() : "";
        if (m == "stark") d.model = DetuningModel::stark;
        else if (m == "linear") d.model = DetuningModel::linear;
        else throw ConfigError("key 'detuning.model' must be 'stark' or 'linear'");
    }
    d.delta0 = number_or(obj, "delta0", w, 0.0);
    d.stark_coeff = number_or(obj, "stark_coeff", w, 0.0);
    d.linear_rate = number_or(obj, "linear_rate", w, 0.0);
    d.linear_center = number_or(obj, "linear_center", w, 0.0);
    return d;
}

std::vector<DipoleEntry> parse_entries(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ConfigError("key '" + where + "' must be an array");
    std::vector<DipoleEntry> out;
    std::set<int> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = where + "." + std::to_string(i) + ".";
        const json& e = arr[i];
        if (!e.is_object()) throw ConfigError("key '" + where + "." + std::to_string(i) + "' must be an object");
        reject_unknown(e, w, {"n", "amplitude", "power"});
        DipoleEntry entry;
        entry.order = as_int(require(e, "n", w), w + "n");
        if (entry.order <= 1 || entry.order % 2 == 0)
            throw ConfigError("key '" + w + "n' must be an odd harmonic order > 1");
        if (!seen.insert(entry.order).second)
            throw ConfigError("key '" + w + "n' duplicates harmonic " + std::to_string(entry.order));
        entry.amplitude = as_complex(require(e, "amplitude", w), w + "amplitude");
        entry.envelope_power = number_or(e, "power", w, static_cast<double>(entry.order));
        if (entry.envelope_power < 0.0) throw ConfigError("key '" + w + "power' must be nonnegative");
        out.push_back(entry);
    }
    return out;
}

DipoleModel parse_dipoles(const json& obj) {
    const std::string w = "dipoles.";
    if (!obj.is_object()) throw ConfigError("key 'dipoles' must be an object");
    reject_unknown(obj, w, {"gg", "ee", "eg"});
    DipoleModel m;
    m.gg = parse_entries(require(obj, "gg", w), w + "gg");
    if (obj.contains("ee")) m.ee = parse_entries(obj.at("ee"), w + "ee");
    if (obj.contains("eg")) {
        const json& eg = obj.at("eg");
        if (!eg.is_object()) throw ConfigError("key 'dipoles.eg' must be an object");
        reject_unknown(eg, w + "eg.", {"amplitude", "power"});
        m.eg.amplitude = as_complex(require(eg, "amplitude", w + "eg."), w + "eg.amplitude");
        m.eg.envelope_power = number_or(eg, "power", w + "eg.", 0.0);
        if (m.eg.envelope_power < 0.0) throw ConfigError("key 'dipoles.eg.power' must be nonnegative");
    }
    return m;
}

FreemanControls parse_freeman(const json& obj) {
    const std::string w = "freeman.";
    if (!obj.is_object()) throw ConfigError("key 'freeman' must be an object");
    reject_unknown(obj, w, {"crossing_times", "crossing_photons", "relative_phase", "equal_magnitudes"});
    FreemanControls f;
    if (obj.contains("crossing_times")) {
        const json& arr = obj.at("crossing_times");
        if (!arr.is_array()) throw ConfigError("key 'freeman.crossing_times' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            f.crossing_times.push_back(as_number(arr[i], w + "crossing_times." + std::to_string(i)));
    }
    if (obj.contains("crossing_photons")) {
        const json& cp = obj.at("crossing_photons");
        const std::string wc = w + "crossing_photons.";
        if (!cp.is_object()) throw ConfigError("key 'freeman.crossing_photons' must be an object");
        reject_unknown(cp, wc, {"mode", "values"});
        FreemanControls::PhotonCrossings pc;
        pc.mode = as_int(require(cp, "mode", wc), wc + "mode");
        const json& vals = require(cp, "values", wc);
        if (!vals.is_array() || vals.empty()) throw ConfigError("key '" + wc + "values' must be a nonempty array");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double v = as_number(vals[i], wc + "values." + std::to_string(i));
            if (v < 0.0) throw ConfigError("key '" + wc + "values." + std::to_string(i) + "' must be nonnegative");
            pc.values.push_back(v);
        }
        f.crossing_photons = pc;
    }
    if (!f.crossing_times.empty() && f.crossing_photons)
        throw ConfigError("key 'freeman.crossing_photons' conflicts with freeman.crossing_times");
    if (obj.contains("relative_phase")) f.relative_phase = as_number(obj.at("relative_phase"), w + "relative_phase");
    if (obj.contains("equal_magnitudes")) {
        if (!obj.at("equal_magnitudes").is_boolean())
            throw ConfigError("key 'freeman.equal_magnitudes' must be a boolean");
        f.equal_magnitudes = obj.at("equal_magnitudes").get<bool>();
    }
    return f;
}

Discretization parse_discretization(const json& obj) {
    const std::string w = "discretization.";
    if (!obj.is_object()) throw ConfigError("key 'discretization' must be an object");
    reject_unknown(obj, w, {"num_nodes", "quadrature", "convergence_tol", "max_nodes"});
    Discretization d;
    if (obj.contains("num_nodes")) d.num_nodes = as_int(obj.at("num_nodes"), w + "num_nodes");
    if (obj.contains("max_nodes")) d.max_nodes = as_int(obj.at("max_nodes"), w + "max_nodes");
    if (obj.contains("quadrature")) {
        const auto q = obj.at("quadrature").is_string() ? obj.at("quadrature").get<std::string>() : "";
        if (q == "trapezoid") d.quadrature = QuadratureRule::trapezoid;
        else if (q == "gauss_legendre") d.quadrature = QuadratureRule::gauss_legendre;
        else throw ConfigError("key 'discretization.quadrature' must be 'trapezoid' or 'gauss_legendre'");
    }
    d.convergence_tol = number_or(obj, "convergence_tol", w, d.convergence_tol);
    if (d.num_nodes < 2) throw ConfigError("key 'discretization.num_nodes' must be >= 2");
    if (d.max_nodes < d.num_nodes) throw ConfigError("key 'discretization.max_nodes' must be >= num_nodes");
    if (!(d.convergence_tol > 0.0)) throw ConfigError("key 'discretization.convergence_tol' must be positive");
    return d;
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration root must be an object");
    reject_unknown(doc, "", {"name", "modes", "envelope", "detuning", "dipoles", "photon_targets",
                             "resonance_mode", "resonant_harmonic", "freeman", "discretization"});
    ScenarioConfig c;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw ConfigError("key 'name' must be a string");
        c.name = doc.at("name").get<std::string>();
    }
    const json& modes = require(doc, "modes", "");
    if (!modes.is_array() || modes.empty()) throw ConfigError("key 'modes' must be a nonempty array");
    std::set<int> seen;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const int n = as_int(modes[i], "modes." + std::to_string(i));
        if (n <= 1 || n % 2 == 0) throw ConfigError("key 'modes." + std::to_string(i) + "' must be an odd harmonic order > 1");
        if (!seen.insert(n).second) throw ConfigError("key 'modes' repeats harmonic " + std::to_string(n));
        c.modes.push_back(n);
    }
    c.envelope = parse_envelope(require(doc, "envelope", ""));
    if (doc.contains("detuning")) c.detuning = parse_detuning(doc.at("detuning"));
    c.dipoles = parse_dipoles(require(doc, "dipoles", ""));
    for (int n : c.modes) {
        if (!c.dipoles.find(c.dipoles.gg, n))
            throw ConfigError("key 'dipoles.gg' has no entry for mode " + std::to_string(n));
        if (!c.dipoles.find(c.dipoles.ee, n))
            c.dipoles.ee.push_back({n, {0.0, 0.0}, static_cast<double>(n)});
    }
    if (doc.contains("photon_targets")) {
        const json& pt = doc.at("photon_targets");
        if (!pt.is_object()) throw ConfigError("key 'photon_targets' must be an object");
        for (auto it = pt.begin(); it != pt.end(); ++it) {
            const std::string key = "photon_targets." + it.key();
            int n = 0;
            try {
                std::size_t used = 0;
                n = std::stoi(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ConfigError("key '" + key + "' is not a harmonic order");
            }
            if (!c.dipoles.find(c.dipoles.gg, n)) throw ConfigError("key '" + key + "' has no gg dipole entry");
            const double v = as_number(it.value(), key);
            if (v < 0.0) throw ConfigError("key '" + key + "' must be nonnegative");
            c.photon_targets[n] = v;
        }
    }
    if (doc.contains("resonance_mode")) {
        const auto m = doc.at("resonance_mode").is_string() ? doc.at("resonance_mode").get<std::string>() : "";
        if (m == "continuous") c.resonance_mode = ResonanceMode::continuous;
        else if (m == "freeman") c.resonance_mode = ResonanceMode::freeman;
        else throw ConfigError("key 'resonance_mode' must be 'continuous' or 'freeman'");
    }
    if (doc.contains("resonant_harmonic")) c.resonant_harmonic = as_int(doc.at("resonant_harmonic"), "resonant_harmonic");
    if (doc.contains("freeman")) c.freeman = parse_freeman(doc.at("freeman"));
    if (c.freeman.crossing_photons && !c.has_mode(c.freeman.crossing_photons->mode))
        throw ConfigError("key 'freeman.crossing_photons.mode' is not one of the modes");
    if (doc.contains("discretization")) c.discretization = parse_discretization(doc.at("discretization"));
    return c;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("configuration file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(doc);
}

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json entries_json(const std::vector<DipoleEntry>& set) {
    json arr = json::array();
    for (const auto& e : set)
        arr.push_back({{"n", e.order}, {"amplitude", complex_json(e.amplitude)}, {"power", e.envelope_power}});
    return arr;
}

}  // namespace

json to_json(const ScenarioConfig& c) {
    json doc;
    doc["name"] = c.name;
    doc["modes"] = c.modes;
    doc["envelope"] = {{"shape", to_string(c.envelope.shape)},
                       {"t_start", c.envelope.t_start},
                       {"t_end", c.envelope.t_end},
                       {"peak", c.envelope.peak},
                       {"gaussian_fwhm", c.envelope.gaussian_fwhm}};
    doc["detuning"] = {{"model", c.detuning.model == DetuningModel::stark ? "stark" : "linear"},
                       {"delta0", c.detuning.delta0},
                       {"stark_coeff", c.detuning.stark_coeff},
                       {"linear_rate", c.detuning.linear_rate},
                       {"linear_center", c.detuning.linear_center}};
    doc["dipoles"] = {{"gg", entries_json(c.dipoles.gg)},
                      {"ee", entries_json(c.dipoles.ee)},
                      {"eg", {{"amplitude", complex_json(c.dipoles.eg.amplitude)},
                              {"power", c.dipoles.eg.envelope_power}}}};
    json targets = json::object();
    for (const auto& [n, v] : c.photon_targets) targets[std::to_string(n)] = v;
    doc["photon_targets"] = targets;
    doc["resonance_mode"] = to_string(c.resonance_mode);
    if (c.resonant_harmonic) doc["resonant_harmonic"] = *c.resonant_harmonic;
    json fm = json::object();
    if (!c.freeman.crossing_times.empty()) fm["crossing_times"] = c.freeman.crossing_times;
    if (c.freeman.crossing_photons)
        fm["crossing_photons"] = {{"mode", c.freeman.crossing_photons->mode},
                                  {"values", c.freeman.crossing_photons->values}};
    if (c.freeman.relative_phase) fm["relative_phase"] = *c.freeman.relative_phase;
    fm["equal_magnitudes"] = c.freeman.equal_magnitudes;
    doc["freeman"] = fm;
    doc["discretization"] = {{"num_nodes", c.discretization.num_nodes},
                             {"quadrature", to_string(c.discretization.quadrature)},
                             {"convergence_tol", c.discretization.convergence_tol},
                             {"max_nodes", c.discretization.max_nodes}};
    return doc;
}

}  // namespace hq
