#include "hq/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hq/amplitudes.hpp"
#include "hq/entanglement.hpp"
#include "hq/errors.hpp"
#include "hq/io.hpp"
#include "hq/phase_space.hpp"
#include "hq/state_builder.hpp"

namespace hq {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ConfigError(what + ": '" + text + "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

class Session {
public:
    Session(const ScenarioConfig& config, fs::path out, const RunOptions& options)
        : original_(config), calibrated_(calibrate_photon_targets(config)), out_(std::move(out)), options_(options) {}

    const BuiltState& built() {
        if (!built_) built_ = build_state(calibrated_);
        return *built_;
    }

    void emit(const std::string& name, const std::string& kind, const std::string& content, json grid = nullptr) {
        write_atomic(out_ / name, content);
        manifest.artifacts.push_back({name, kind, std::move(grid)});
    }
    void emit_json(const std::string& name, const std::string& kind, const json& doc, json grid = nullptr) {
        emit(name, kind, doc.dump(2) + "\n", std::move(grid));
    }

    void task_state() {
        const auto& b = built();
        emit("branches.csv", "branches", branches_csv(b.state));
        json crossings = json::array(), coefficients = json::array();
        for (const auto& c : b.report.crossings)
            crossings.push_back({{"t", c.t_k}, {"detuning_slope", c.detuning_slope}, {"phase", c.phase}});
        for (const auto& c : b.report.coefficients) coefficients.push_back(cplx_json(c));
        json s{{"branches", b.report.nodes},
               {"fidelity", b.report.fidelity},
               {"raw_norm", b.report.raw_norm},
               {"norm_residual", b.state.norm_residual},
               {"modes", b.state.modes},
               {"resonance_mode", to_string(calibrated_.resonance_mode)},
               {"crossings", crossings},
               {"coefficients", coefficients}};
        manifest.summary["state"] = s;
    }

    void task_amplitudes() {
        CsvBuilder csv({"t_prime", "n", "re_alpha", "im_alpha"});
        for (const auto& r : amplitude_table(calibrated_, options_.amplitude_rows))
            csv.row({r.t_prime, static_cast<double>(r.n), r.alpha.real(), r.alpha.imag()});
        emit("amplitudes.csv", "amplitudes", csv.str());
    }

    void task_wigner() {
        const auto& b = built();
        json summary = json::array();
        for (int mode : b.state.modes) {
            const SelectedMode sel = select_mode(b.state, mode);
            const Grid1D g = options_.grid ? *options_.grid : covering_grid(sel.state, {mode}, options_.wigner_points);
            const WignerGrid w = wigner_single_mode(sel.state, g, g);
            const std::string stem = "wigner_" + std::to_string(mode);
            const json grid{{"x", grid_json(g)}, {"p", grid_json(g)}};
            emit(stem + ".csv", "wigner", wigner_csv(w), grid);
            const double wmin = *std::min_element(w.values.begin(), w.values.end());
            const double wmax = *std::max_element(w.values.begin(), w.values.end());
            json side{{"kind", "wigner"},
                      {"csv", stem + ".csv"},
                      {"columns", {"x", "p", "W"}},
                      {"order", "x slow, p fast"},
                      {"mode", mode},
                      {"grid", grid},
                      {"conventions", kConventionNote},
                      {"exact_reduction", sel.exact_reduction},
                      {"normalization_residual", w.normalization_residual},
                      {"imaginary_residue", w.imaginary_residue},
                      {"min", wmin},
                      {"max", wmax}};
            emit_json(stem + ".json", "wigner_sidecar", side);
            summary.push_back({{"mode", mode}, {"min", wmin}, {"normalization_residual", w.normalization_residual}});
        }
        manifest.summary["wigner"] = summary;
    }

    void task_quadrature2d() {
        const auto& b = built();
        if (b.state.modes.size() < 2) throw ModeMismatch("task 'quadrature2d' needs at least two modes");
        const int ma = b.state.modes[0], mb = b.state.modes[1];
        const Grid1D ga = options_.grid ? *options_.grid : covering_grid(b.state, {ma}, options_.wigner_points);
        const Grid1D gb = options_.grid ? *options_.grid : covering_grid(b.state, {mb}, options_.wigner_points);
        const QuadratureField f = quadrature_wavefunction(b.state, {ma, mb}, {ga, gb});
        const std::string stem = "quadrature_" + std::to_string(ma) + "_" + std::to_string(mb);
        const json grid{{"X_" + std::to_string(ma), grid_json(ga)}, {"X_" + std::to_string(mb), grid_json(gb)}};
        emit(stem + ".csv", "quadrature2d", quadrature_csv(f), grid);
        double mass = 0.0;
        for (const cplx& v : f.values) mass += std::norm(v);
        mass *= ga.step() * gb.step();
        json side{{"kind", "quadrature2d"},
                  {"csv", stem + ".csv"},
                  {"columns", {"X_" + std::to_string(ma), "X_" + std::to_string(mb), "re_psi", "im_psi", "abs2"}},
                  {"order", "first axis slow"},
                  {"modes", {ma, mb}},
                  {"grid", grid},
                  {"conventions", kConventionNote},
                  {"normalization_residual", std::abs(1.0 - mass)}};
        emit_json(stem + ".json", "quadrature2d_sidecar", side);
        manifest.summary["quadrature2d"] = {{"modes", {ma, mb}}, {"normalization_residual", std::abs(1.0 - mass)}};
    }

    void task_schmidt() {
        const auto& b = built();
        if (b.state.modes.size() < 2) throw BadBipartition("task 'schmidt' needs at least two modes");
        const std::vector<int> left{b.state.modes[0]};
        const SchmidtSpectrum s = schmidt_gram(b.state, left);
        emit("schmidt.csv", "schmidt_spectrum", spectrum_csv(s));
        json j{{"left_modes", left},
               {"S", s.entropy},
               {"D", s.schmidt_number},
               {"method", to_string(s.method)},
               {"residual", s.residual},
               {"trace_residual", s.trace_residual}};
        if (b.state.modes.size() == 2) {
            const int ma = b.state.modes[0], mb = b.state.modes[1];
            const QuadratureField f = quadrature_wavefunction(b.state, {ma, mb},
                                                              {schmidt_grid(b.state, ma), schmidt_grid(b.state, mb)});
            const SchmidtSpectrum g = schmidt_grid_svd(f);
            double diff = 0.0;
            for (std::size_t i = 0; i < std::max(s.lambdas.size(), g.lambdas.size()); ++i) {
                const double a = i < s.lambdas.size() ? s.lambdas[i] : 0.0;
                const double c = i < g.lambdas.size() ? g.lambdas[i] : 0.0;
                if (a > 1e-4 || c > 1e-4) diff = std::max(diff, std::abs(a - c));
            }
            j["grid_svd"] = {{"S", g.entropy}, {"D", g.schmidt_number}, {"residual", g.residual}, {"max_lambda_diff", diff}};
        }
        emit_json("schmidt.json", "schmidt_summary", j);
        manifest.summary["schmidt"] = j;
    }

    void task_variance() {
        const auto& b = built();
        CsvBuilder csv({"mode", "theta", "variance"});
        json summary = json::array();
        for (int mode : b.state.modes) {
            const SelectedMode sel = select_mode(b.state, mode);
            const QuadratureVariance v = quadrature_variance_min(sel.state);
            csv.row({static_cast<double>(mode), v.theta, v.variance});
            summary.push_back({{"mode", mode}, {"theta", v.theta}, {"variance", v.variance},
                               {"exact_reduction", sel.exact_reduction}});
        }
        emit("variance.csv", "variance", csv.str());
        manifest.summary["variance"] = summary;
    }

    RunManifest manifest;

private:
    ScenarioConfig original_;
    ScenarioConfig calibrated_;
    fs::path out_;
    RunOptions options_;
    std::optional<BuiltState> built_;
};

}  // namespace

const std::set<std::string>& known_tasks() {
    static const std::set<std::string> tasks{"state", "wigner", "quadrature2d", "schmidt", "variance", "amplitudes"};
    return tasks;
}

std::set<std::string> parse_tasks(const std::string& list) {
    std::set<std::string> out;
    if (list.empty()) return out;
    for (const auto& t : split(list, ',')) {
        if (!known_tasks().count(t)) throw ConfigError("unknown task '" + t + "'");
        out.insert(t);
    }
    return out;
}

Grid1D parse_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("grid must be 'min:max:count'");
    const double lo = parse_number(parts[0], "grid min"), hi = parse_number(parts[1], "grid max");
    const double count = parse_number(parts[2], "grid count");
    if (!(hi > lo) || count < 2 || count != std::floor(count) || count > 100000)
        throw ConfigError("grid needs min < max and an integer count in [2, 100000]");
    return {lo, hi, static_cast<int>(count)};
}

json to_json(const RunManifest& m) {
    json artifacts = json::array();
    for (const auto& a : m.artifacts) {
        json j{{"path", a.path}, {"kind", a.kind}};
        if (!a.grid.is_null()) j["grid"] = a.grid;
        artifacts.push_back(j);
    }
    return {{"scenario", m.scenario},
            {"config_hash", m.config_hash},
            {"tool_version", HQ_VERSION},
            {"conventions", kConventionNote},
            {"wall_time_s", m.wall_time},
            {"artifacts", artifacts},
            {"summary", m.summary},
            {"config", m.config}};
}

RunManifest run(const ScenarioConfig& config, const fs::path& out_dir, const std::set<std::string>& tasks,
                const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& t : tasks)
        if (!known_tasks().count(t)) throw ConfigError("unknown task '" + t + "'");
    fs::create_directories(out_dir);
    Session session(config, out_dir, options);
    RunManifest& m = session.manifest;
    m.scenario = config.name;
    m.config_hash = config_hash(config);
    m.config = to_json(config);
    m.summary = json::object();

    // Fixed order so artifact lists are deterministic.
    if (tasks.count("state")) session.task_state();
    if (tasks.count("amplitudes")) session.task_amplitudes();
    if (tasks.count("wigner")) session.task_wigner();
    if (tasks.count("quadrature2d")) session.task_quadrature2d();
    if (tasks.count("schmidt")) session.task_schmidt();
    if (tasks.count("variance")) session.task_variance();

    m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json_atomic(out_dir / "manifest.json", to_json(m));
    return m;
}

RunManifest run(const fs::path& config_path, const fs::path& out_dir, const std::set<std::string>& tasks,
                const RunOptions& options) {
    return run(parse_scenario_file(config_path.string()), out_dir, tasks, options);
}

RatioLock parse_ratio_lock(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("ratio lock must be 'key=ratio'");
    return {spec.substr(0, eq), parse_number(spec.substr(eq + 1), "ratio lock")};
}

void set_dotted(json& doc, const std::string& key, double value) {
    json* node = &doc;
    for (const auto& part : split(key, '.')) {
        if (part.empty()) throw ConfigError("bad parameter key '" + key + "'");
        if (node->is_object() && node->contains(part)) {
            node = &(*node)[part];
        } else if (node->is_array() && std::all_of(part.begin(), part.end(), ::isdigit) &&
                   std::stoul(part) < node->size()) {
            node = &(*node)[std::stoul(part)];
        } else {
            throw ConfigError("bad parameter key '" + key + "': '" + part + "' not found");
        }
    }
    if (!node->is_number()) throw ConfigError("bad parameter key '" + key + "': not a numeric field");
    *node = value;
}

SweepResult sweep(const fs::path& config_path, const std::string& parameter, const std::vector<double>& values,
                  const std::optional<RatioLock>& lock, const fs::path& out_dir, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open configuration '" + config_path.string() + "'");
    json base;
    try {
        base = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    const ScenarioConfig base_config = parse_scenario(base);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

    SweepResult result;
    result.points.resize(values.size());
    RunManifest& m = result.manifest;
    m.scenario = base_config.name;
    m.config_hash = config_hash(base_config);
    m.config = to_json(base_config);
    m.summary = {{"parameter", parameter}, {"values", values}};
    if (lock) m.summary["ratio_lock"] = {{"key", lock->key}, {"ratio", lock->ratio}};

    const std::set<std::string> tasks = base_config.modes.size() >= 2
                                            ? std::set<std::string>{"state", "schmidt", "variance"}
                                            : std::set<std::string>{"state", "variance"};
    for (std::size_t i = 0; i < values.size(); ++i) {
        json doc = base;
        set_dotted(doc, parameter, values[i]);
        if (lock) set_dotted(doc, lock->key, lock->ratio * values[i]);
        const ScenarioConfig cfg = parse_scenario(doc);
        char dir[32];
        std::snprintf(dir, sizeof dir, "point_%03zu", i);
        const RunManifest pm = run(cfg, out_dir / dir, tasks, options);
        SweepPoint& p = result.points[i];
        p.value = values[i];
        p.norm = pm.summary["state"]["raw_norm"].get<double>();
        if (pm.summary.contains("schmidt")) {
            p.entropy = pm.summary["schmidt"]["S"].get<double>();
            p.schmidt_number = pm.summary["schmidt"]["D"].get<double>();
        }
        for (const auto& v : pm.summary["variance"])
            if (v["mode"].get<int>() == cfg.resonant_order()) p.min_variance = v["variance"].get<double>();
        m.artifacts.push_back({std::string(dir) + "/manifest.json", "point_manifest", nullptr});
    }

    std::vector<SweepPoint> sorted;
    CsvBuilder csv({"value", "S", "D", "min_variance", "norm"});
    for (std::size_t i : order) {
        const auto& p = result.points[i];
        sorted.push_back(p);
        csv.row({p.value, p.entropy, p.schmidt_number, p.min_variance, p.norm});
    }
    result.points = std::move(sorted);
    write_atomic(out_dir / "sweep.csv", csv.str());
    m.artifacts.push_back({"sweep.csv", "sweep", nullptr});
    m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json_atomic(out_dir / "manifest.json", to_json(m));
    return result;
}

}  // namespace hq
