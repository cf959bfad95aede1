// corrtcl.cpp — Command-line harness: simulate, exact-dephasing, compare,
// sweep and list-presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrtcl/scenario.hpp"

namespace {

using namespace corrtcl;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::optional<double> dt;
    std::optional<double> tmax;
    std::optional<int> quad_nodes;
    bool no_corr_term{false};
    bool no_corr_state{false};
    std::string out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--out", o.out, "Output CSV path (default: config 'output' or stdout)");
    cmd->add_option("--dt", o.dt, "Time step");
    cmd->add_option("--tmax", o.tmax, "Final time");
    cmd->add_option("--quad-nodes", o.quad_nodes, "Frequency quadrature nodes");
    cmd->add_flag("--no-corr-term", o.no_corr_term, "Drop the initial-correlation term");
    cmd->add_flag("--no-corr-state", o.no_corr_state, "Start from the product state");
}

// A readable file is parsed as a config; otherwise the argument names a preset.
ScenarioConfig load_target(const std::string& target, const Overrides& o) {
    ScenarioConfig cfg;
    if (std::filesystem::is_regular_file(target)) {
        std::ifstream in(target);
        if (!in) throw IoError("cannot read " + target);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = parse_config(text.str());
    } else if (auto p = find_preset(target)) {
        cfg = *p;
    } else {
        throw ConfigError("no config file or preset named '" + target + "' (see list-presets)");
    }
    if (o.dt) cfg.dt = *o.dt;
    if (o.tmax) cfg.t_max = *o.tmax;
    if (o.quad_nodes) cfg.quad_nodes = *o.quad_nodes;
    if (o.no_corr_term) cfg.corr_term = false;
    if (o.no_corr_state) cfg.corr_state = false;
    if (!o.out.empty()) cfg.output = o.out;
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw ConfigError("invalid sweep value: '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("invalid sweep values: empty list");
    return values;
}

void print_summary(const ComparisonReport& rep) {
    std::fprintf(stderr, "D=%.12g max_trace_drift=%.3g max_hermiticity_defect=%.3g\n", rep.D, rep.max_trace_drift,
                 rep.max_hermiticity_defect);
}

int fail(const char* kind, const std::string& msg) {
    std::string line = msg;
    for (char& c : line)
        if (c == '\n') c = ' ';
    std::fprintf(stderr, "error[%s]: %s\n", kind, line.c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open-system spin dynamics with initial system-environment correlations"};
    app.require_subcommand(1);

    Overrides sim_o, exact_o, cmp_o, sweep_o;
    std::string sim_t, exact_t, cmp_t, sweep_t, axis, values;

    auto* sim = app.add_subcommand("simulate", "Run correlated and product-state trajectories, write CSV");
    sim->add_option("target", sim_t, "Config file or preset name")->required();
    add_overrides(sim, sim_o);

    auto* exact = app.add_subcommand("exact-dephasing", "Exact pure-dephasing curves, write CSV");
    exact->add_option("target", exact_t, "Config file or preset name")->required();
    add_overrides(exact, exact_o);

    auto* cmp = app.add_subcommand("compare", "Master equation against the exact solution (dephasing model)");
    cmp->add_option("target", cmp_t, "Config file or preset name")->required();
    add_overrides(cmp, cmp_o);

    auto* sw = app.add_subcommand("sweep", "D = max_t |jx_corr - jx_uncorr| along one parameter axis");
    sw->add_option("target", sweep_t, "Config file or preset name")->required();
    sw->add_option("--axis", axis, "N, beta or s")->required();
    sw->add_option("--values", values, "Comma-separated axis values")->required();
    add_overrides(sw, sweep_o);

    auto* list = app.add_subcommand("list-presets", "List the registered presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail("usage", e.what());
        return 2;
    }

    try {
        if (*list) {
            for (const auto& p : presets()) std::printf("%-6s  %s\n", p.name.c_str(), p.description.c_str());
        } else if (*sim) {
            const ScenarioConfig cfg = load_target(sim_t, sim_o);
            const ComparisonReport rep = run_scenario(cfg);
            emit(cfg.output, to_csv(rep));
            print_summary(rep);
        } else if (*exact) {
            const ScenarioConfig cfg = load_target(exact_t, exact_o);
            const ExactReport rep = run_exact_dephasing(cfg);
            emit(cfg.output, to_csv(rep));
            if (rep.any_undefined) std::fprintf(stderr, "warning: some correlated elements are undefined\n");
        } else if (*cmp) {
            const ScenarioConfig cfg = load_target(cmp_t, cmp_o);
            if (cfg.model != ModelKind::dephasing)
                throw ConfigError("invalid value for model: compare requires model = dephasing");
            const ComparisonReport rep = run_scenario(cfg);
            if (!cfg.output.empty()) emit(cfg.output, to_csv(rep));
            std::printf("D=%.12g\noracle_deviation_corr=%.12g\noracle_deviation_uncorr=%.12g\n", rep.D,
                        *rep.oracle_deviation_corr, *rep.oracle_deviation_uncorr);
        } else if (*sw) {
            const ScenarioConfig cfg = load_target(sweep_t, sweep_o);
            const auto rows = sweep(cfg, parse_axis(axis), parse_values(values));
            emit(cfg.output, sweep_csv(rows));
        }
    } catch (const ConfigError& e) {
        return fail("config", e.what());
    } catch (const InvalidArgument& e) {
        return fail("invalid", e.what());
    } catch (const NumericalError& e) {
        return fail("numerical", e.what());
    } catch (const IoError& e) {
        return fail("io", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
