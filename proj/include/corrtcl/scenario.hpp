// scenario.hpp — Scenario configuration, figure presets, trajectory runs and
// CSV reports for the command-line harness.

#pragma once

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corrtcl/bath.hpp"
#include "corrtcl/correlation_term.hpp"
#include "corrtcl/dephasing_exact.hpp"
#include "corrtcl/initial_state.hpp"
#include "corrtcl/linalg.hpp"
#include "corrtcl/tcl2_solver.hpp"

namespace corrtcl {

class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

enum class ModelKind { boson, spin_env, dephasing };

inline const char* to_string(ModelKind m) {
    switch (m) {
    case ModelKind::boson: return "boson";
    case ModelKind::spin_env: return "spin_env";
    case ModelKind::dephasing: return "dephasing";
    }
    return "?";
}

inline constexpr double kDefaultDt = 0.004;
inline constexpr int kMaxScenarioSpins = 200;

struct ScenarioConfig {
    std::string name; // preset name, empty for hand-written configs
    ModelKind model{ModelKind::boson};
    int N{1};
    double eps0{4.0};
    double delta0{0.0};
    double eps{4.0};
    double delta{0.0};
    double beta{1.0};
    double G{0.05};
    double s{1.0};
    double omega_c{5.0};
    double dt{kDefaultDt};
    double t_max{2.0};
    bool corr_state{true};
    bool corr_term{true};
    bool jx2{false};
    int quad_nodes{400};
    bool literal_alpha{false};
    std::string output;

    bool operator==(const ScenarioConfig&) const = default;

    ModelParams params() const { return {eps0, delta0, eps, delta}; }

    bath::BathSpec bath_spec() const {
        bath::BathSpec b;
        b.kind = model == ModelKind::spin_env ? bath::BathKind::spin : bath::BathKind::bosonic;
        b.G = G;
        b.s = s;
        b.omega_c = omega_c;
        b.beta = beta;
        b.quad.nodes = quad_nodes;
        return b;
    }

    // Step bound that resolves both the system frequency and the bath cutoff.
    double max_dt() const {
        double bound = 0.02 / omega_c;
        const double dtilde = std::hypot(eps, delta);
        if (dtilde > 0.0) bound = std::min(bound, 0.02 / dtilde);
        return bound;
    }

    void validate() const {
        auto fail = [](const std::string& key, const std::string& constraint) {
            throw ConfigError("invalid value for " + key + ": " + constraint);
        };
        if (N < 1 || N > kMaxScenarioSpins) fail("N", "must be in [1, " + std::to_string(kMaxScenarioSpins) + "]");
        if (!(beta > 0.0)) fail("beta", "must be > 0");
        if (!(G >= 0.0)) fail("G", "must be >= 0");
        if (!(s > 0.0)) fail("s", "must be > 0");
        if (!(omega_c > 0.0)) fail("omega_c", "must be > 0");
        for (auto [key, v] : {std::pair{"eps0", eps0}, {"delta0", delta0}, {"eps", eps}, {"delta", delta}})
            if (!std::isfinite(v)) fail(key, "must be finite");
        if (!(dt > 0.0)) fail("dt", "must be > 0");
        if (dt > max_dt() * (1.0 + 1e-12))
            fail("dt", "must be <= min(0.02/sqrt(eps^2+delta^2), 0.02/omega_c) = " + std::to_string(max_dt()));
        if (!(t_max >= dt)) fail("t_max", "must be >= dt");
        const double steps = std::round(t_max / dt);
        if (std::abs(steps * dt - t_max) > 1e-9 * t_max) fail("t_max", "must be an integer multiple of dt");
        if (quad_nodes < 8) fail("quad_nodes", "must be >= 8");
        if (model == ModelKind::dephasing && (delta != 0.0 || delta0 != 0.0))
            fail("delta", "dephasing model requires delta = delta0 = 0");
        if (literal_alpha && model != ModelKind::spin_env) fail("literal_alpha", "only applies to model = spin_env");
    }
};

struct Preset {
    std::string name;
    std::string description;
    ScenarioConfig config;
};

namespace detail {

inline ScenarioConfig dephasing_base(const char* name, int n) {
    ScenarioConfig c;
    c.name = name;
    c.model = ModelKind::dephasing;
    c.N = n;
    c.eps0 = c.eps = 4.0;
    c.delta0 = c.delta = 0.0;
    c.t_max = 2.0;
    return c;
}

inline ScenarioConfig boson_base(const char* name, int n) {
    ScenarioConfig c;
    c.name = name;
    c.model = ModelKind::boson;
    c.N = n;
    c.eps0 = 4.0;
    c.eps = 2.5;
    c.delta0 = c.delta = 0.5;
    c.t_max = 5.0;
    return c;
}

} // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> registry = [] {
        using detail::boson_base;
        using detail::dephasing_base;
        std::vector<Preset> r;
        r.push_back({"fig1", "pure dephasing, N=1", dephasing_base("fig1", 1)});
        r.push_back({"fig2", "pure dephasing, N=4", dephasing_base("fig2", 4)});
        r.push_back({"fig3", "pure dephasing, N=10", dephasing_base("fig3", 10)});
        r.push_back({"fig4", "spin-boson, N=2", boson_base("fig4", 2)});
        r.push_back({"fig5", "spin-boson, N=4", boson_base("fig5", 4)});
        r.push_back({"fig6", "spin-boson, N=10", boson_base("fig6", 10)});
        auto fig7 = boson_base("fig7", 10);
        fig7.beta = 0.5;
        r.push_back({"fig7", "spin-boson, N=10, beta=0.5", fig7});
        auto fig8 = boson_base("fig8", 10);
        fig8.beta = 1.5;
        r.push_back({"fig8", "spin-boson, N=10, beta=1.5", fig8});
        auto fig9 = boson_base("fig9", 4);
        fig9.jx2 = true;
        r.push_back({"fig9", "spin-boson, N=4, with jx2", fig9});
        auto fig10 = boson_base("fig10", 10);
        fig10.jx2 = true;
        r.push_back({"fig10", "spin-boson, N=10, with jx2", fig10});
        auto fig11 = boson_base("fig11", 4);
        fig11.s = 0.5;
        r.push_back({"fig11", "sub-Ohmic spin-boson, N=4, s=0.5", fig11});
        auto fig12 = boson_base("fig12", 10);
        fig12.s = 0.5;
        r.push_back({"fig12", "sub-Ohmic spin-boson, N=10, s=0.5", fig12});
        auto fig13 = boson_base("fig13", 4);
        fig13.model = ModelKind::spin_env;
        r.push_back({"fig13", "spin environment, N=4", fig13});
        auto fig14 = boson_base("fig14", 10);
        fig14.model = ModelKind::spin_env;
        r.push_back({"fig14", "spin environment, N=10", fig14});
        return r;
    }();
    return registry;
}

inline std::optional<ScenarioConfig> find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p.config;
    return std::nullopt;
}

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "preset", "model", "N", "eps0", "eps", "beta", "G", "omega_c", "delta0", "delta", "s", "dt", "t_max",
        "corr_state", "corr_term", "jx2", "quad_nodes", "output", "literal_alpha"};
    return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
        throw ConfigError("invalid value for " + key + ": expected a finite number, got '" + v + "'");
    return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
    int x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("invalid value for " + key + ": expected an integer, got '" + v + "'");
    return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("invalid value for " + key + ": expected true/false, got '" + v + "'");
}

inline ModelKind parse_model(const std::string& v) {
    if (v == "boson") return ModelKind::boson;
    if (v == "spin_env") return ModelKind::spin_env;
    if (v == "dephasing") return ModelKind::dephasing;
    throw ConfigError("invalid value for model: expected boson, spin_env or dephasing, got '" + v + "'");
}

inline void apply_key(ScenarioConfig& c, const std::string& key, const std::string& v) {
    if (key == "model") c.model = parse_model(v);
    else if (key == "N") c.N = parse_int(key, v);
    else if (key == "eps0") c.eps0 = parse_double(key, v);
    else if (key == "eps") c.eps = parse_double(key, v);
    else if (key == "delta0") c.delta0 = parse_double(key, v);
    else if (key == "delta") c.delta = parse_double(key, v);
    else if (key == "beta") c.beta = parse_double(key, v);
    else if (key == "G") c.G = parse_double(key, v);
    else if (key == "s") c.s = parse_double(key, v);
    else if (key == "omega_c") c.omega_c = parse_double(key, v);
    else if (key == "dt") c.dt = parse_double(key, v);
    else if (key == "t_max") c.t_max = parse_double(key, v);
    else if (key == "corr_state") c.corr_state = parse_bool(key, v);
    else if (key == "corr_term") c.corr_term = parse_bool(key, v);
    else if (key == "jx2") c.jx2 = parse_bool(key, v);
    else if (key == "quad_nodes") c.quad_nodes = parse_int(key, v);
    else if (key == "literal_alpha") c.literal_alpha = parse_bool(key, v);
    else if (key == "output") c.output = v;
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

// Flat `key = value` text, `#` starts a comment. `preset = <name>` loads a
// registered preset; the remaining keys override it. Without a preset the
// keys model, N, eps0, eps, beta, G and omega_c are required.
inline ScenarioConfig parse_config(std::string_view text) {
    std::map<std::string, std::string> entries;
    std::vector<std::string> order;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    const auto& keys = config_keys();
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + body + "'");
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            std::string valid;
            for (const auto& k : keys) valid += (valid.empty() ? "" : ", ") + k;
            throw ConfigError("unknown key: " + key + " (valid keys: " + valid + ")");
        }
        if (entries.count(key)) throw ConfigError("duplicate key: " + key);
        entries[key] = value;
        order.push_back(key);
    }

    ScenarioConfig cfg;
    if (auto it = entries.find("preset"); it != entries.end()) {
        auto p = find_preset(it->second);
        if (!p) throw ConfigError("unknown preset: " + it->second + " (see list-presets)");
        cfg = *p;
    } else {
        for (const char* req : {"model", "N", "eps0", "eps", "beta", "G", "omega_c"})
            if (!entries.count(req)) throw ConfigError(std::string("missing key: ") + req);
        cfg.t_max = 5.0;
    }
    for (const auto& key : order)
        if (key != "preset") detail::apply_key(cfg, key, entries[key]);
    if (cfg.model == ModelKind::dephasing && !entries.count("preset") && !entries.count("t_max")) cfg.t_max = 2.0;
    cfg.validate();
    return cfg;
}

// Full `key = value` listing that parse_config maps back to the same config.
inline std::string to_config_text(const ScenarioConfig& c) {
    using detail::format_double;
    std::ostringstream out;
    if (!c.name.empty()) out << "preset = " << c.name << '\n';
    out << "model = " << to_string(c.model) << '\n'
        << "N = " << c.N << '\n'
        << "eps0 = " << format_double(c.eps0) << '\n'
        << "eps = " << format_double(c.eps) << '\n'
        << "delta0 = " << format_double(c.delta0) << '\n'
        << "delta = " << format_double(c.delta) << '\n'
        << "beta = " << format_double(c.beta) << '\n'
        << "G = " << format_double(c.G) << '\n'
        << "s = " << format_double(c.s) << '\n'
        << "omega_c = " << format_double(c.omega_c) << '\n'
        << "dt = " << format_double(c.dt) << '\n'
        << "t_max = " << format_double(c.t_max) << '\n'
        << "corr_state = " << (c.corr_state ? "true" : "false") << '\n'
        << "corr_term = " << (c.corr_term ? "true" : "false") << '\n'
        << "jx2 = " << (c.jx2 ? "true" : "false") << '\n'
        << "quad_nodes = " << c.quad_nodes << '\n';
    if (c.model == ModelKind::spin_env) out << "literal_alpha = " << (c.literal_alpha ? "true" : "false") << '\n';
    if (!c.output.empty()) out << "output = " << c.output << '\n';
    return out.str();
}

struct ComparisonReport {
    ScenarioConfig config;
    std::vector<double> times;
    std::vector<double> jx_corr, jx_uncorr;
    std::vector<double> jx2_corr, jx2_uncorr;
    std::vector<double> jx_exact_corr, jx_exact_uncorr; // dephasing model only
    double D{0.0};
    std::optional<double> oracle_deviation_corr;
    std::optional<double> oracle_deviation_uncorr;
    double max_trace_drift{0.0};
    double max_hermiticity_defect{0.0};
    double max_population_drift{0.0}; // dephasing model only
    double initial_correction_norm{0.0};
    double zprime{1.0};
    bool exact_undefined{false};

    bool has_exact() const { return !jx_exact_corr.empty(); }
};

namespace detail {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double population_drift(const Trajectory& tr) {
    double m = 0.0;
    const auto& r0 = tr.states.front();
    for (const auto& r : tr.states) m = std::max(m, (r.diagonal() - r0.diagonal()).cwiseAbs().maxCoeff());
    return m;
}

inline constexpr double kBathConvergenceTolerance = 1e-6;

// C(tau) on [0, t_max] against the same rule with twice the nodes. The fixed
// frequency rule loses accuracy once the phase w t varies too fast across a panel.
inline void check_bath_convergence(const bath::BathSpec& spec, const bath::BathCorrelations& bc, double t_max) {
    bath::BathSpec fine = spec;
    fine.quad.nodes = 2 * spec.quad.nodes;
    const bath::BathCorrelations ref(fine);
    const double scale = std::abs(ref.real_corr(0.0));
    if (scale == 0.0) return;
    constexpr int samples = 64;
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * i / samples;
        const double change = std::abs(ref.real_corr(t) - bc.real_corr(t)) / scale;
        if (change > kBathConvergenceTolerance)
            throw NumericalError("frequency quadrature not converged at t=" + std::to_string(t) + " (relative change " +
                                 std::to_string(change) + " on doubling " + std::to_string(spec.quad.nodes) +
                                 " nodes); increase quad_nodes");
    }
}

inline ComparisonReport run_scenario_impl(const ScenarioConfig& cfg, bool with_exact) {
    cfg.validate();
    const SpinSystem sys = build_spin_system(cfg.N);
    const ModelParams p = cfg.params();
    const bath::BathSpec spec = cfg.bath_spec();
    const bath::BathCorrelations bc(spec);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    const double t_max = cfg.dt * static_cast<double>(steps);
    check_bath_convergence(spec, bc, t_max);
    const PreparationSpec prep = PreparationSpec::rotation(sys, cfg.eps0, cfg.delta0);
    const OperatorMatrix coupling = cfg.model == ModelKind::spin_env ? sys.jx : sys.jz;
    const OperatorMatrix h_s = p.h_s(sys);

    const KernelCache kernel = build_kernel(h_s, coupling, bc, cfg.dt, t_max);
    CorrelationSeries series;
    if (cfg.corr_term) {
        const double spacing = 0.5 * cfg.dt;
        const std::size_t count = 2 * steps + 1;
        const bool closed_form = (cfg.model != ModelKind::spin_env || cfg.literal_alpha) && p.delta_prime() > 0.0 &&
                                 p.delta_tilde() > 0.0;
        series = closed_form ? tabulate_closed_form(sys, p, bc, spacing, count)
                             : tabulate_generic(sys, prep, h_s, coupling, bc, spacing, count);
    }

    const OperatorMatrix rho_uncorr = prepare_uncorrelated(sys, prep, cfg.beta);
    ComparisonReport rep;
    rep.config = cfg;
    OperatorMatrix rho_corr = rho_uncorr;
    if (cfg.corr_state || (with_exact && cfg.model == ModelKind::dephasing)) {
        const CorrelatedState cs = prepare_correlated(sys, prep, bc, coupling);
        rep.zprime = cs.zprime;
        rep.initial_correction_norm = cs.correction_norm;
        if (cfg.corr_state) rho_corr = cs.rho0;
        if (with_exact && cfg.model == ModelKind::dephasing) {
            const auto& m = bc.measure();
            std::vector<double> times(steps + 1);
            for (std::size_t i = 0; i <= steps; ++i) times[i] = cfg.dt * static_cast<double>(i);
            const ExactCurve ec = exact_curve(sys, cs.rho0, &prep.omega, cfg.eps, cfg.eps0, m, cfg.beta, times);
            const ExactCurve eu = exact_curve(sys, rho_uncorr, nullptr, cfg.eps, cfg.eps0, m, cfg.beta, times);
            rep.jx_exact_corr = ec.jx;
            rep.jx_exact_uncorr = eu.jx;
            rep.exact_undefined = ec.any_undefined;
        }
    }

    SolverOptions on;
    on.with_corr_term = cfg.corr_term;
    on.max_dt = cfg.max_dt();
    SolverOptions off = on;
    off.with_corr_term = false;
    const Trajectory tc =
        evolve(sys, rho_corr, h_s, coupling, kernel, cfg.corr_term ? &series : nullptr, cfg.dt, t_max, on);
    const Trajectory tu = evolve(sys, rho_uncorr, h_s, coupling, kernel, nullptr, cfg.dt, t_max, off);

    rep.times = tc.times;
    rep.jx_corr = tc.jx;
    rep.jx_uncorr = tu.jx;
    rep.jx2_corr = tc.jx2;
    rep.jx2_uncorr = tu.jx2;
    rep.D = max_abs_diff(tc.jx, tu.jx);
    rep.max_trace_drift = std::max(tc.max_trace_drift, tu.max_trace_drift);
    rep.max_hermiticity_defect = std::max(tc.max_hermiticity_defect, tu.max_hermiticity_defect);
    if (cfg.model == ModelKind::dephasing)
        rep.max_population_drift = std::max(population_drift(tc), population_drift(tu));
    if (rep.has_exact()) {
        rep.oracle_deviation_corr = max_abs_diff(rep.jx_corr, rep.jx_exact_corr);
        rep.oracle_deviation_uncorr = max_abs_diff(rep.jx_uncorr, rep.jx_exact_uncorr);
    }
    return rep;
}

} // namespace detail

// Correlated run (toggles as configured) and the product-state baseline
// (both toggles off) on a shared grid, plus the exact curves for the
// dephasing model.
inline ComparisonReport run_scenario(const ScenarioConfig& cfg, bool with_exact = true) {
    const std::string label = cfg.name.empty() ? std::string("config") : cfg.name;
    try {
        return detail::run_scenario_impl(cfg, with_exact);
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw InvalidArgument("scenario " + label + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError("scenario " + label + ": " + e.what());
    }
}

inline std::string to_csv(const ComparisonReport& rep) {
    const bool exact = rep.has_exact();
    const bool jx2 = rep.config.jx2;
    std::string out = "t,jx_corr,jx_uncorr";
    if (exact) out += ",jx_exact_corr,jx_exact_uncorr";
    if (jx2) out += ",jx2_corr,jx2_uncorr";
    out += '\n';
    char buf[64];
    auto put = [&](double x, bool first = false) {
        std::snprintf(buf, sizeof buf, "%.12g", x);
        if (!first) out += ',';
        out += buf;
    };
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        put(rep.times[i], true);
        put(rep.jx_corr[i]);
        put(rep.jx_uncorr[i]);
        if (exact) {
            put(rep.jx_exact_corr[i]);
            put(rep.jx_exact_uncorr[i]);
        }
        if (jx2) {
            put(rep.jx2_corr[i]);
            put(rep.jx2_uncorr[i]);
        }
        out += '\n';
    }
    return out;
}

struct ExactReport {
    std::vector<double> times;
    std::vector<double> jx_exact_corr, jx_exact_uncorr;
    bool any_undefined{false};
};

// Exact curves only, on the scenario's time grid.
inline ExactReport run_exact_dephasing(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.model != ModelKind::dephasing)
        throw ConfigError("invalid value for model: exact solution requires model = dephasing");
    const SpinSystem sys = build_spin_system(cfg.N);
    const bath::BathCorrelations bc(cfg.bath_spec());
    const PreparationSpec prep = PreparationSpec::rotation(sys, cfg.eps0, cfg.delta0);
    const CorrelatedState cs = prepare_correlated(sys, prep, bc, sys.jz);
    const OperatorMatrix rho_uncorr = prepare_uncorrelated(sys, prep, cfg.beta);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    std::vector<double> times(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) times[i] = cfg.dt * static_cast<double>(i);
    const ExactCurve ec = exact_curve(sys, cs.rho0, &prep.omega, cfg.eps, cfg.eps0, bc.measure(), cfg.beta, times);
    const ExactCurve eu = exact_curve(sys, rho_uncorr, nullptr, cfg.eps, cfg.eps0, bc.measure(), cfg.beta, times);
    return {times, ec.jx, eu.jx, ec.any_undefined};
}

inline std::string to_csv(const ExactReport& rep) {
    std::string out = "t,jx_exact_corr,jx_exact_uncorr\n";
    char buf[128];
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", rep.times[i], rep.jx_exact_corr[i],
                      rep.jx_exact_uncorr[i]);
        out += buf;
    }
    return out;
}

enum class SweepAxis { N, beta, s };

inline SweepAxis parse_axis(std::string_view name) {
    if (name == "N") return SweepAxis::N;
    if (name == "beta") return SweepAxis::beta;
    if (name == "s") return SweepAxis::s;
    throw ConfigError("invalid sweep axis: " + std::string(name) + " (expected N, beta or s)");
}

struct SweepRow {
    double value;
    double D;
};

inline ScenarioConfig with_axis_value(ScenarioConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::N:
        if (value != std::round(value)) throw ConfigError("invalid value for N: sweep value must be an integer");
        cfg.N = static_cast<int>(value);
        break;
    case SweepAxis::beta: cfg.beta = value; break;
    case SweepAxis::s: cfg.s = value; break;
    }
    return cfg;
}

// D for each axis value; the first failing value aborts the sweep.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<double>& values) {
    detail::require(!values.empty(), "sweep: no values given");
    std::vector<SweepRow> rows;
    for (double v : values) {
        try {
            const ScenarioConfig cfg = with_axis_value(base, axis, v);
            cfg.validate();
            rows.push_back({v, run_scenario(cfg, false).D});
        } catch (const ConfigError& e) {
            throw ConfigError("sweep value " + detail::format_double(v) + ": " + e.what());
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("sweep value " + detail::format_double(v) + ": " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError("sweep value " + detail::format_double(v) + ": " + e.what());
        }
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "axis_value,D\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", r.value, r.D);
        out += buf;
    }
    return out;
}

} // namespace corrtcl
