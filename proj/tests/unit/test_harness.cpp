#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dri/bench/acceptance.hpp"
#include "dri/bench/harness.hpp"

using namespace dri;
using namespace dri::bench;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::stringstream ss;
    ss << std::ifstream(p).rdbuf();
    return ss.str();
}

BenchmarkConfig small_config() {
    BenchmarkConfig cfg;
    cfg.cases = {{"short55", reference_leo(0.005, 55.0), 0.25, 60.0}, {"short5", reference_leo(0.075, 5.0), 0.25, 60.0}};
    cfg.timing_evaluations = 0;
    cfg.propagators = {PropagatorKind::dri2};
    return cfg;
}

}  // namespace

TEST(Harness, ErrorRecordDefinitions) {
    const CartesianState truth{{7000.0, 0.0, 0.0}, {0.0, 7.5, 0.0}};
    const CartesianState cand{{7000.0, 0.003, 0.0}, {0.0, 7.5, 0.00004}};
    const auto r = error_record(10.0, cand, truth);
    EXPECT_NEAR(r.dr_m, 1e3 * (std::hypot(7000.0, 0.003) - 7000.0), 1e-9);
    EXPECT_NEAR(r.dpos_m, 3.0, 1e-9);
    EXPECT_NEAR(r.dv_mps, 1e3 * (std::hypot(7.5, 0.00004) - 7.5), 1e-9);
}

TEST(Harness, CsvRoundTripAndLineCount) {
    const auto dir = fresh_dir("dri_csv");
    std::vector<ErrorRecord> recs;
    for (int k = 0; k < 25; ++k) recs.push_back({60.0 * k, 0.1 * k, 1e-4 * k, 1.0 / (k + 1)});
    emit_csv(recs, dir / "a.csv");
    const std::string text = slurp(dir / "a.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "t_s,dr_m,dv_mps,dpos_m");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
    EXPECT_EQ(read_csv(dir / "a.csv"), recs);

    emit_csv({}, dir / "empty.csv");
    EXPECT_EQ(slurp(dir / "empty.csv"), "t_s,dr_m,dv_mps,dpos_m\n");
    EXPECT_TRUE(read_csv(dir / "empty.csv").empty());
}

TEST(Harness, ShortCaseErrorsAreSmall) {
    const auto cfg = small_config();
    const auto r = run_case(cfg.cases[0], PropagatorKind::dri2, cfg.model, cfg.integrator, TruthCache::from_environment(), 0);
    EXPECT_EQ(r.records.size(), 361u);
    EXPECT_LT(r.summary.max_dr_m, 2.0);
    EXPECT_LT(r.summary.max_dv_mps, 2e-3);
    EXPECT_FALSE(r.timing.has_value());
}

TEST(Harness, GridIsDeterministic) {
    const auto cfg = small_config();
    const auto cache = TruthCache::from_environment();
    const auto dir1 = fresh_dir("dri_grid1"), dir2 = fresh_dir("dri_grid2");
    write_results(run_grid(cfg, cache, 2), dir1);
    write_results(run_grid(cfg, cache, 1), dir2);
    for (const char* f : {"summary.csv", "short55_DRI2.csv", "short5_DRI2.csv"}) {
        ASSERT_TRUE(std::filesystem::exists(dir1 / f)) << f;
        EXPECT_EQ(slurp(dir1 / f), slurp(dir2 / f)) << f;
    }
}

TEST(Harness, FailingCaseDoesNotAbortGrid) {
    auto cfg = small_config();
    cfg.cases.push_back({"crash", {6500.0, 0.05, 0.3, 0.0, 0.0, kPi}, 0.25, 60.0});
    const auto res = run_grid(cfg, TruthCache::disabled(), 2);
    ASSERT_EQ(res.outcomes.size(), 3u);
    EXPECT_FALSE(res.all_succeeded());
    EXPECT_TRUE(res.outcomes[0].result.has_value());
    EXPECT_TRUE(res.outcomes[1].result.has_value());
    EXPECT_EQ(res.outcomes[2].failure, FailureKind::numerical);
    const auto dir = fresh_dir("dri_grid_fail");
    write_results(res, dir);
    EXPECT_NE(slurp(dir / "summary.csv").find("crash,DRI2"), std::string::npos);
}

TEST(Harness, RejectsHighEccentricity) {
    const CaseSpec spec{"wild", reference_leo(0.35, 55.0), 0.1, 60.0};
    EXPECT_THROW(run_case(spec, PropagatorKind::dri2, GravityModel{}, {}, TruthCache::disabled(), 0), DomainError);
}

TEST(Harness, TimingIsReported) {
    const CaseSpec spec{"t", reference_leo(0.005, 55.0), 0.1, 60.0};
    const DriPropagator prop(case_initial_polar(spec, GravityModel{}), {Order::second, GravityModel{}});
    const auto t = time_samples(prop, case_grid(spec), 2000);
    EXPECT_GE(t.evaluations, 2000u);
    EXPECT_GT(t.ns_per_sample, 0.0);
    const auto h = horizon_timing(prop, 30.0, 2000, 3);
    EXPECT_GT(h.early_ns, 0.0);
    EXPECT_GT(h.late_ns, 0.0);
}

TEST(Harness, SweepCoversRequestedValues) {
    SweepSpec s;
    s.from = 0.0;
    s.to = 0.1;
    s.steps = 3;
    s.inclinations_deg = {55.0};
    s.duration_days = 0.1;
    const auto values = sweep_values(s);
    ASSERT_EQ(values.size(), 3u);
    EXPECT_DOUBLE_EQ(values[1], 0.05);
    const auto rows = run_sweep(s, GravityModel{}, IntegratorConfig{1e-12, 1e-12, 600.0, false}, TruthCache::disabled(), 2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].status, "ok");
    EXPECT_EQ(rows[1].status, "ok");
    EXPECT_EQ(rows[2].status, "eccentricity_above_envelope");
    const auto dir = fresh_dir("dri_sweep");
    write_sweep(rows, dir / "sweep.csv");
    const std::string text = slurp(dir / "sweep.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    s.param = "x";
    EXPECT_THROW(sweep_cases(s), ConfigError);
}

TEST(Harness, AcceptanceHelpers) {
    const auto a = acceptance::near_circular_states(10, 0.01, GravityModel{}, 3);
    const auto b = acceptance::near_circular_states(10, 0.01, GravityModel{}, 3);
    ASSERT_EQ(a.size(), 10u);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k], b[k]);
    EXPECT_EQ(acceptance::relative_residual(a[0], a[0]), 0.0);
    auto c = a[0];
    c.theta += kTwoPi * 1e-6;
    EXPECT_NEAR(acceptance::relative_residual(c, a[0]), 1e-6, 1e-12);
}
