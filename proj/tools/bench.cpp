// bench: benchmark harness for the radial-intermediary propagator.
//
//   bench run    --config <file> [--out-dir <dir>]
//   bench truth  --config <file>
//   bench verify
//   bench sweep  --param e --from 0.0 --to 0.1 --steps 21
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 acceptance failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dri/bench/acceptance.hpp"
#include "dri/bench/config.hpp"
#include "dri/bench/harness.hpp"

namespace {

using namespace dri;
using namespace dri::bench;

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kAcceptanceFailure = 3 };

struct ModelOverrides {
    std::optional<double> mu, alpha, j2;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--mu", mu, "gravitational parameter [km^3/s^2]");
        cmd.add_option("--alpha", alpha, "equatorial radius [km]");
        cmd.add_option("--j2", j2, "second zonal harmonic");
    }

    void apply(GravityModel& m) const {
        if (mu) m.mu = *mu;
        if (alpha) m.alpha = *alpha;
        if (j2) m.j2 = *j2;
        validate(m);
    }
};

BenchmarkConfig load(const std::string& path, const ModelOverrides& overrides) {
    BenchmarkConfig cfg = load_config(path);
    overrides.apply(cfg.model);
    return cfg;
}

int report_failures(const GridResults& results) {
    int code = kOk;
    for (const auto& o : results.outcomes) {
        if (o.result) continue;
        std::fprintf(stderr, "bench: %s %s: %s\n", o.spec.name.c_str(), to_string(o.kind), o.error.c_str());
        code = std::max(code, o.failure == FailureKind::config ? int(kConfigError) : int(kNumericalError));
    }
    return code == kOk ? kOk : (code == kNumericalError ? kNumericalError : kConfigError);
}

int cmd_run(const std::string& config, const std::optional<std::string>& out_dir, unsigned threads,
            const ModelOverrides& overrides) {
    BenchmarkConfig cfg = load(config, overrides);
    if (out_dir) cfg.out_dir = *out_dir;
    const auto results = run_grid(cfg, TruthCache::from_environment(), threads);
    write_results(results, cfg.out_dir);
    for (const auto& o : results.outcomes) {
        if (!o.result) continue;
        const auto& s = o.result->summary;
        std::printf("%-22s %s  max dr %10.3f m  max dv %9.5f m/s  max |dr| %10.3f m\n", o.spec.name.c_str(),
                    to_string(o.kind), s.max_dr_m, s.max_dv_mps, s.max_dpos_m);
    }
    std::printf("results written to %s\n", cfg.out_dir.c_str());
    return report_failures(results);
}

int cmd_truth(const std::string& config, unsigned threads, const ModelOverrides& overrides) {
    const BenchmarkConfig cfg = load(config, overrides);
    const auto cache = TruthCache::from_environment();
    if (!cache.enabled()) throw ConfigError("truth cache is disabled");
    std::vector<std::string> errors(cfg.cases.size());
    std::vector<int> hits(cfg.cases.size(), 0);
    parallel_for(cfg.cases.size(), threads, [&](std::size_t k) {
        try {
            bool hit = false;
            cache.get(case_initial_state(cfg.cases[k], cfg.model), cfg.model, case_grid(cfg.cases[k]),
                      cfg.integrator, &hit);
            hits[k] = hit;
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    });
    int code = kOk;
    for (std::size_t k = 0; k < cfg.cases.size(); ++k) {
        if (!errors[k].empty()) {
            std::fprintf(stderr, "bench: %s: %s\n", cfg.cases[k].name.c_str(), errors[k].c_str());
            code = kNumericalError;
        } else {
            std::printf("%-22s %s\n", cfg.cases[k].name.c_str(), hits[k] ? "cached" : "integrated");
        }
    }
    std::printf("truth cache: %s\n", cache.directory().c_str());
    return code;
}

int cmd_verify(const std::string& series_table, unsigned threads) {
    AcceptanceOptions opt;
    opt.cache = TruthCache::from_environment();
    opt.series_table = series_table;
    opt.threads = threads;
    int failed = 0;
    run_acceptance(opt, [&](const CriterionResult& r) {
        std::printf("%s\n", format_result(r).c_str());
        std::fflush(stdout);
        if (!r.passed) ++failed;
    });
    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? kOk : kAcceptanceFailure;
}

int cmd_sweep(SweepSpec spec, const std::optional<std::string>& config, const std::string& out, unsigned threads,
              const ModelOverrides& overrides) {
    GravityModel model;
    IntegratorConfig integrator;
    integrator.stop_at_surface = false;
    if (config) {
        const BenchmarkConfig cfg = load_config(*config);
        model = cfg.model;
        integrator = cfg.integrator;
    }
    overrides.apply(model);
    const auto rows = run_sweep(spec, model, integrator, TruthCache::from_environment(), threads);
    write_sweep(rows, out);
    int code = kOk;
    for (const auto& r : rows) {
        std::printf("%s=%-8g i=%-4g %s  max dr %10.3f m  max dv %9.5f m/s  %s\n", r.param.c_str(), r.value,
                    r.i_deg, to_string(r.kind), r.summary.max_dr_m, r.summary.max_dv_mps, r.status.c_str());
        if (r.status.rfind("error", 0) == 0) code = kNumericalError;
    }
    std::printf("sweep written to %s\n", out.c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for the radial-intermediary LEO propagator"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

    std::string config;
    std::optional<std::string> out_dir;
    ModelOverrides run_overrides, truth_overrides, sweep_overrides;

    auto* run = app.add_subcommand("run", "propagate the configured grid and write error CSVs");
    run->add_option("--config", config, "benchmark config file")->required();
    run->add_option("--out-dir", out_dir, "output directory (overrides the config)");
    run_overrides.add_to(*run);

    auto* truth = app.add_subcommand("truth", "pre-build the truth cache for a config");
    truth->add_option("--config", config, "benchmark config file")->required();
    truth_overrides.add_to(*truth);

    std::string series_table = DRI_SERIES_TABLE;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--series-table", series_table, "coefficient table for the transcription check");

    SweepSpec sweep_spec;
    std::optional<std::string> sweep_config;
    std::string sweep_out = "results/sweep.csv";
    std::vector<std::string> sweep_props{"DRI2"};
    auto* sweep = app.add_subcommand("sweep", "error envelope along eccentricity or inclination");
    sweep->add_option("--param", sweep_spec.param, "swept parameter: e or i [deg]")->check(CLI::IsMember({"e", "i"}));
    sweep->add_option("--from", sweep_spec.from, "first value");
    sweep->add_option("--to", sweep_spec.to, "last value");
    sweep->add_option("--steps", sweep_spec.steps, "number of values")->check(CLI::PositiveNumber);
    sweep->add_option("--days", sweep_spec.duration_days, "propagation span [days]");
    sweep->add_option("--step-s", sweep_spec.step_s, "sample spacing [s]");
    sweep->add_option("--inclinations", sweep_spec.inclinations_deg, "inclinations for an e sweep [deg]");
    sweep->add_option("--eccentricity", sweep_spec.eccentricity, "eccentricity for an i sweep");
    sweep->add_option("--propagators", sweep_props, "DRI1 and/or DRI2");
    sweep->add_option("--config", sweep_config, "take model and integrator settings from a config");
    sweep->add_option("--out", sweep_out, "output CSV");
    sweep_overrides.add_to(*sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(config, out_dir, threads, run_overrides);
        if (*truth) return cmd_truth(config, threads, truth_overrides);
        if (*verify) return cmd_verify(series_table, threads);
        if (*sweep) {
            sweep_spec.propagators.clear();
            for (const auto& p : sweep_props) sweep_spec.propagators.push_back(parse_propagator(p));
            return cmd_sweep(sweep_spec, sweep_config, sweep_out, threads, sweep_overrides);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "bench: configuration error: %s\n", e.what());
        return kConfigError;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "bench: invalid input: %s\n", e.what());
        return kConfigError;
    } catch (const IoError& e) {
        std::fprintf(stderr, "bench: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bench: numerical failure: %s\n", e.what());
        return kNumericalError;
    }
    return kOk;
}
