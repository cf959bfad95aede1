// test_scenario.cpp — presets, config parsing, comparison runs and sweeps

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "corrtcl/scenario.hpp"

using namespace corrtcl;

namespace {

std::string config_error(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST(Presets, RegistryIsCompleteAndUnique) {
    std::set<std::string> names;
    for (const auto& p : presets()) {
        EXPECT_TRUE(names.insert(p.name).second) << p.name;
        EXPECT_EQ(p.config.name, p.name);
        EXPECT_NO_THROW(p.config.validate()) << p.name;
    }
    EXPECT_EQ(names.size(), 14u);
    EXPECT_FALSE(find_preset("fig99").has_value());
}

TEST(Presets, ParameterValues) {
    const auto f1 = *find_preset("fig1");
    EXPECT_EQ(f1.model, ModelKind::dephasing);
    EXPECT_EQ(f1.N, 1);
    EXPECT_EQ(f1.eps0, 4.0);
    EXPECT_EQ(f1.eps, 4.0);
    EXPECT_EQ(f1.delta, 0.0);
    EXPECT_EQ(f1.t_max, 2.0);

    const auto f4 = *find_preset("fig4");
    EXPECT_EQ(f4.model, ModelKind::boson);
    EXPECT_EQ(f4.N, 2);
    EXPECT_EQ(f4.eps0, 4.0);
    EXPECT_EQ(f4.eps, 2.5);
    EXPECT_EQ(f4.delta0, 0.5);
    EXPECT_EQ(f4.delta, 0.5);
    EXPECT_EQ(f4.G, 0.05);
    EXPECT_EQ(f4.omega_c, 5.0);
    EXPECT_EQ(f4.beta, 1.0);

    const auto f11 = *find_preset("fig11");
    EXPECT_EQ(f11.s, 0.5);
    EXPECT_EQ(f11.N, 4);
    EXPECT_EQ(find_preset("fig7")->beta, 0.5);
    EXPECT_EQ(find_preset("fig8")->beta, 1.5);
    EXPECT_EQ(find_preset("fig14")->model, ModelKind::spin_env);
}

TEST(ParseConfig, MissingModelIsReportedFirst) {
    EXPECT_EQ(config_error(""), "missing key: model");
    EXPECT_EQ(config_error("# only a comment\n\n"), "missing key: model");
    EXPECT_EQ(config_error("model = boson\n"), "missing key: N");
}

TEST(ParseConfig, UnknownKeyListsValidKeys) {
    const std::string msg = config_error("preset = fig1\ntemperature = 3\n");
    EXPECT_NE(msg.find("unknown key: temperature"), std::string::npos);
    for (const auto& k : config_keys()) EXPECT_NE(msg.find(k), std::string::npos) << k;
}

TEST(ParseConfig, RejectsMalformedInput) {
    EXPECT_NE(config_error("preset = fig1\npreset = fig2\n").find("duplicate key: preset"), std::string::npos);
    EXPECT_NE(config_error("preset = fig1\nN\n").find("line 2"), std::string::npos);
    EXPECT_NE(config_error("preset = nope\n").find("unknown preset"), std::string::npos);
    EXPECT_NE(config_error("preset = fig1\nN = 0\n").find("invalid value for N"), std::string::npos);
    EXPECT_NE(config_error("preset = fig1\nbeta = -1\n").find("invalid value for beta"), std::string::npos);
    EXPECT_NE(config_error("preset = fig1\nG = abc\n").find("G"), std::string::npos);
    EXPECT_NE(config_error("preset = fig4\ndt = 0.01\n").find("invalid value for dt"), std::string::npos);
    EXPECT_NE(config_error("preset = fig1\ndelta = 0.5\n").find("dephasing"), std::string::npos);
}

TEST(ParseConfig, HandWrittenConfigDefaults) {
    const auto c = parse_config("model = dephasing\nN = 3\neps0 = 4\neps = 4\nbeta = 1\nG = 0.05\nomega_c = 5\n");
    EXPECT_EQ(c.model, ModelKind::dephasing);
    EXPECT_EQ(c.N, 3);
    EXPECT_EQ(c.t_max, 2.0);
    EXPECT_EQ(c.dt, kDefaultDt);
    EXPECT_TRUE(c.name.empty());
    const auto b = parse_config("model = boson\nN = 3\neps0 = 4\neps = 2.5\nbeta = 1\nG = 0.05\nomega_c = 5\n"
                                "delta0 = 0.5\ndelta = 0.5  # trailing comment\n");
    EXPECT_EQ(b.t_max, 5.0);
    EXPECT_EQ(b.delta, 0.5);
}

TEST(ParseConfig, PresetOverrides) {
    const auto c = parse_config("preset = fig6\ns = 0.5\njx2 = true\noutput = out.csv\n");
    auto ref = *find_preset("fig6");
    ref.s = 0.5;
    ref.jx2 = true;
    ref.output = "out.csv";
    EXPECT_EQ(c, ref);
}

TEST(ParseConfig, EveryPresetRoundTrips) {
    for (const auto& p : presets()) {
        EXPECT_EQ(parse_config(to_config_text(p.config)), p.config) << p.name;
        auto hand = p.config;
        hand.name.clear();
        hand.beta = 0.7312345678901234;
        hand.corr_term = false;
        EXPECT_EQ(parse_config(to_config_text(hand)), hand) << p.name;
    }
}

TEST(RunScenario, CsvIsDeterministicWithExpectedHeaders) {
    auto cfg = *find_preset("fig2");
    cfg.t_max = 0.4;
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    EXPECT_EQ(to_csv(a), to_csv(b));
    EXPECT_EQ(first_line(to_csv(a)), "t,jx_corr,jx_uncorr,jx_exact_corr,jx_exact_uncorr");
    EXPECT_EQ(a.times.size(), 101u);

    auto boson = *find_preset("fig9");
    boson.t_max = 0.4;
    const auto r = run_scenario(boson);
    EXPECT_FALSE(r.has_exact());
    EXPECT_EQ(first_line(to_csv(r)), "t,jx_corr,jx_uncorr,jx2_corr,jx2_uncorr");
}

TEST(RunScenario, ZeroCouplingRemovesCorrelationEffect) {
    for (const char* name : {"fig2", "fig5", "fig13"}) {
        auto cfg = *find_preset(name);
        cfg.G = 0.0;
        cfg.t_max = 1.0;
        const auto rep = run_scenario(cfg);
        EXPECT_LT(rep.D, 1e-14) << name;
    }
}

TEST(RunScenario, SwitchesDisableTheirContributions) {
    auto cfg = *find_preset("fig5");
    cfg.t_max = 1.0;
    cfg.corr_state = false;
    cfg.corr_term = false;
    const auto rep = run_scenario(cfg);
    EXPECT_EQ(rep.D, 0.0);
    cfg.corr_term = true;
    EXPECT_GT(run_scenario(cfg).D, 0.0);
}

TEST(RunScenario, ErrorsNameTheScenario) {
    auto cfg = *find_preset("fig4");
    cfg.t_max = 12.0; // beyond the range the frequency quadrature resolves
    try {
        run_scenario(cfg);
        FAIL() << "expected a numerical error";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("scenario fig4"), std::string::npos);
    }
}

TEST(ExactDephasing, OnlyForDephasingModel) {
    EXPECT_THROW(run_exact_dephasing(*find_preset("fig4")), ConfigError);
    auto cfg = *find_preset("fig1");
    cfg.t_max = 0.2;
    const auto rep = run_exact_dephasing(cfg);
    EXPECT_EQ(rep.times.size(), 51u);
    EXPECT_EQ(first_line(to_csv(rep)), "t,jx_exact_corr,jx_exact_uncorr");
    const auto full = run_scenario(cfg);
    EXPECT_EQ(rep.jx_exact_corr, full.jx_exact_corr);
    EXPECT_EQ(rep.jx_exact_uncorr, full.jx_exact_uncorr);
}

TEST(Sweep, SingleValueMatchesRunScenario) {
    auto base = *find_preset("fig5");
    base.t_max = 1.0;
    const auto rows = sweep(base, SweepAxis::beta, {1.0});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].D, run_scenario(base, false).D);
    EXPECT_EQ(sweep_csv(rows).substr(0, 13), "axis_value,D\n");
}

TEST(Sweep, AxisParsingAndBadValues) {
    EXPECT_EQ(parse_axis("N"), SweepAxis::N);
    EXPECT_EQ(parse_axis("s"), SweepAxis::s);
    EXPECT_THROW(parse_axis("G"), ConfigError);
    auto base = *find_preset("fig5");
    base.t_max = 0.2;
    EXPECT_THROW(sweep(base, SweepAxis::N, {2.0, 2.5}), ConfigError);
    try {
        sweep(base, SweepAxis::beta, {1.0, -2.0});
        FAIL() << "expected a config error";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("sweep value -2"), std::string::npos);
    }
    EXPECT_THROW(sweep(base, SweepAxis::beta, {}), InvalidArgument);
}
