#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hq/errors.hpp"
#include "hq/kernels.hpp"
#include "hq/runner.hpp"
#include "hq/scenario.hpp"

namespace {

std::set<std::string> default_tasks(const hq::ScenarioConfig& c) {
    if (c.modes.size() >= 2) return {"state", "wigner", "quadrature2d", "schmidt", "variance"};
    return {"state", "wigner", "variance"};
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::string item;
    for (std::size_t i = 0; i <= list.size(); ++i) {
        if (i == list.size() || list[i] == ',') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != item.size()) throw hq::ConfigError("sweep value '" + item + "' is not a number");
            out.push_back(v);
            item.clear();
        } else {
            item += list[i];
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entangled multimode harmonic-light states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HQ_VERSION);

    std::string config, out, tasks, grid, param, values, lock;
    bool tasks_given = false;

    auto* run_cmd = app.add_subcommand("run", "Build one scenario and write the requested analyses");
    run_cmd->add_option("--config", config, "scenario JSON")->required();
    run_cmd->add_option("--out", out, "output directory")->required();
    auto* tasks_opt = run_cmd->add_option("--tasks", tasks,
                                          "comma list of state,wigner,quadrature2d,schmidt,variance,amplitudes");
    run_cmd->add_option("--grid", grid, "override every grid with min:max:count");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario per parameter value");
    sweep_cmd->add_option("--config", config, "scenario JSON")->required();
    sweep_cmd->add_option("--param", param, "dotted numeric key, e.g. photon_targets.3")->required();
    sweep_cmd->add_option("--values", values, "comma list of values")->required();
    sweep_cmd->add_option("--ratio-lock", lock, "companion key scaled with the value, key=ratio");
    sweep_cmd->add_option("--out", out, "output directory")->required();
    sweep_cmd->add_option("--grid", grid, "override every grid with min:max:count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("HQ_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) hq::set_thread_limit(n);
    }

    try {
        hq::RunOptions options;
        if (!grid.empty()) options.grid = hq::parse_grid(grid);
        if (*run_cmd) {
            tasks_given = tasks_opt->count() > 0;
            const hq::ScenarioConfig cfg = hq::parse_scenario_file(config);
            const auto selected = tasks_given ? hq::parse_tasks(tasks) : default_tasks(cfg);
            const auto m = hq::run(cfg, out, selected, options);
            std::cout << "wrote " << m.artifacts.size() << " artifacts to " << out << "\n";
        } else {
            std::optional<hq::RatioLock> ratio;
            if (!lock.empty()) ratio = hq::parse_ratio_lock(lock);
            const auto r = hq::sweep(config, param, parse_values(values), ratio, out, options);
            std::cout << "swept " << r.points.size() << " points into " << out << "\n";
        }
    } catch (const hq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hq::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
