#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "../errors.hpp"
#include "../format.hpp"
#include "../kinematics.hpp"
#include "../propagator.hpp"
#include "../reference_integrator.hpp"
#include "../truth_cache.hpp"
#include "config.hpp"

namespace dri::bench {

/// Error of a candidate against the truth at one sample time.
struct ErrorRecord {
    double t = 0.0;       ///< [s]
    double dr_m = 0.0;    ///< | |r|_candidate - |r|_truth | [m]
    double dv_mps = 0.0;  ///< | |v|_candidate - |v|_truth | [m/s]
    double dpos_m = 0.0;  ///< |r_candidate - r_truth| [m]; total position error

    friend bool operator==(const ErrorRecord&, const ErrorRecord&) = default;
};

struct ErrorSummary {
    std::size_t samples = 0;
    double max_dr_m = 0.0;
    double rms_dr_m = 0.0;
    double max_dv_mps = 0.0;
    double rms_dv_mps = 0.0;
    double max_dpos_m = 0.0;
};

struct TimingSummary {
    double ns_per_sample = 0.0;
    std::size_t evaluations = 0;
};

struct CaseResult {
    CaseSpec spec;
    PropagatorKind kind = PropagatorKind::dri2;
    std::vector<ErrorRecord> records;
    ErrorSummary summary;
    std::optional<TimingSummary> timing;
    std::vector<Warning> warnings;
};

inline ErrorRecord error_record(double t, const CartesianState& candidate, const CartesianState& truth) {
    ErrorRecord rec;
    rec.t = t;
    rec.dr_m = 1e3 * std::abs(norm(candidate.position) - norm(truth.position));
    rec.dv_mps = 1e3 * std::abs(norm(candidate.velocity) - norm(truth.velocity));
    rec.dpos_m = 1e3 * norm(candidate.position - truth.position);
    return rec;
}

inline ErrorSummary summarize(std::span<const ErrorRecord> records) {
    ErrorSummary s;
    s.samples = records.size();
    double sum_dr2 = 0.0, sum_dv2 = 0.0;
    for (const auto& r : records) {
        s.max_dr_m = std::max(s.max_dr_m, r.dr_m);
        s.max_dv_mps = std::max(s.max_dv_mps, r.dv_mps);
        s.max_dpos_m = std::max(s.max_dpos_m, r.dpos_m);
        sum_dr2 += r.dr_m * r.dr_m;
        sum_dv2 += r.dv_mps * r.dv_mps;
    }
    if (!records.empty()) {
        s.rms_dr_m = std::sqrt(sum_dr2 / static_cast<double>(records.size()));
        s.rms_dv_mps = std::sqrt(sum_dv2 / static_cast<double>(records.size()));
    }
    return s;
}

/// Largest eccentricity the harness accepts.
inline constexpr double kMaxHarnessEccentricity = 0.3;

inline std::vector<double> case_grid(const CaseSpec& spec) {
    return uniform_grid(spec.duration_days * kSecondsPerDay, spec.step_s);
}

inline PolarNodalState case_initial_polar(const CaseSpec& spec, const GravityModel& model) {
    return classical_to_polar_nodal(spec.elements, model);
}

inline CartesianState case_initial_state(const CaseSpec& spec, const GravityModel& model) {
    return polar_nodal_to_cartesian(case_initial_polar(spec, model));
}

/// Truth samples for `spec` on its grid, through the cache.
inline std::vector<CartesianState> case_truth(const CaseSpec& spec, const GravityModel& model,
                                              const IntegratorConfig& integrator, const TruthCache& cache) {
    const auto grid = case_grid(spec);
    return cache.get(case_initial_state(spec, model), model, grid, integrator);
}

/// Mean wall time per analytical sample [ns], cycling through `grid`
/// until at least `min_evaluations` samples were timed (after warm-up).
inline TimingSummary time_samples(const DriPropagator& prop, std::span<const double> grid,
                                  std::size_t min_evaluations) {
    if (grid.empty()) return {};
    volatile double sink = 0.0;
    const std::size_t warmup = std::min<std::size_t>(grid.size(), 1000);
    for (std::size_t k = 0; k < warmup; ++k) sink = sink + prop.state_at(grid[k]).cartesian.position[0];

    std::size_t n = 0;
    const auto start = std::chrono::steady_clock::now();
    while (n < min_evaluations) {
        for (double t : grid) sink = sink + prop.state_at(t).cartesian.position[0];
        n += grid.size();
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
    return {ns / static_cast<double>(n), n};
}

/// Errors of one propagator against precomputed truth on the case grid.
inline CaseResult evaluate_case(const CaseSpec& spec, PropagatorKind kind, const GravityModel& model,
                                std::span<const CartesianState> truth) {
    if (!(spec.elements.e < kMaxHarnessEccentricity))
        throw DomainError("case " + spec.name + ": eccentricity >= 0.3 is outside the harness range");
    const auto grid = case_grid(spec);
    if (truth.size() != grid.size()) throw DomainError("case " + spec.name + ": truth/grid size mismatch");
    const DriPropagator prop(case_initial_polar(spec, model), PropagatorConfig{order_of(kind), model});

    CaseResult out;
    out.spec = spec;
    out.kind = kind;
    out.warnings = prop.warnings();
    out.records.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out.records.push_back(error_record(grid[k], prop.state_at(grid[k]).cartesian, truth[k]));
    out.summary = summarize(out.records);
    return out;
}

/// Truth (cached), candidate ephemeris, error records and timing for one case.
inline CaseResult run_case(const CaseSpec& spec, PropagatorKind kind, const GravityModel& model,
                           const IntegratorConfig& integrator, const TruthCache& cache,
                           std::size_t timing_evaluations = 10000) {
    if (!(spec.elements.e < kMaxHarnessEccentricity))
        throw DomainError("case " + spec.name + ": eccentricity >= 0.3 is outside the harness range");
    const auto truth = case_truth(spec, model, integrator, cache);
    CaseResult out = evaluate_case(spec, kind, model, truth);
    if (timing_evaluations > 0) {
        const DriPropagator prop(case_initial_polar(spec, model), PropagatorConfig{order_of(kind), model});
        out.timing = time_samples(prop, case_grid(spec), timing_evaluations);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

inline void emit_csv(std::span<const ErrorRecord> records, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(path.parent_path().string(), "cannot create directory: " + ec.message());
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path.string(), "cannot open for writing");
    std::string buf = "t_s,dr_m,dv_mps,dpos_m\n";
    for (const auto& r : records) {
        buf += format_scientific(r.t);
        (buf += ',') += format_scientific(r.dr_m);
        (buf += ',') += format_scientific(r.dv_mps);
        (buf += ',') += format_scientific(r.dpos_m);
        buf += '\n';
    }
    os << buf;
    if (!os) throw IoError(path.string(), "write failed");
}

inline std::vector<ErrorRecord> read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path.string(), "cannot open for reading");
    std::string line;
    if (!std::getline(is, line) || line.rfind("t_s,dr_m,dv_mps", 0) != 0)
        throw IoError(path.string(), "missing CSV header");
    std::vector<ErrorRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<double, 4> v{};
        std::size_t pos = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const std::size_t end = std::min(line.find(',', pos), line.size());
            if (pos > line.size() || !parse_double(std::string_view(line).substr(pos, end - pos), v[k]))
                throw IoError(path.string(), "malformed row " + std::to_string(out.size() + 2));
            pos = end + 1;
        }
        out.push_back({v[0], v[1], v[2], v[3]});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid

enum class FailureKind { none, config, numerical };

struct CaseOutcome {
    CaseSpec spec;
    PropagatorKind kind = PropagatorKind::dri2;
    std::optional<CaseResult> result;
    FailureKind failure = FailureKind::none;
    std::string error;
};

struct GridResults {
    std::vector<CaseOutcome> outcomes;  ///< cases x propagators, in config order

    bool all_succeeded() const {
        return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.result.has_value(); });
    }
};

/// Runs `task(k)` for k in [0, n) on up to `threads` workers.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) task(k);
        });
}

inline FailureKind classify(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return FailureKind::config;
    return FailureKind::numerical;
}

/// Every (case x propagator) combination. Cases run concurrently; a failing
/// case is recorded in its outcome and does not abort the grid. Timing is
/// measured afterwards on one thread so workers do not skew it.
inline GridResults run_grid(const BenchmarkConfig& cfg, const TruthCache& cache, unsigned threads = 0) {
    validate(cfg);
    const std::size_t np = cfg.propagators.size();
    GridResults out;
    out.outcomes.resize(cfg.cases.size() * np);
    parallel_for(cfg.cases.size(), threads, [&](std::size_t c) {
        const CaseSpec& spec = cfg.cases[c];
        std::vector<CartesianState> truth;
        std::string error;
        FailureKind failure = FailureKind::none;
        try {
            if (!(spec.elements.e < kMaxHarnessEccentricity))
                throw DomainError("case " + spec.name + ": eccentricity >= 0.3 is outside the harness range");
            truth = case_truth(spec, cfg.model, cfg.integrator, cache);
        } catch (const std::exception& e) {
            error = e.what();
            failure = classify(e);
        }
        for (std::size_t k = 0; k < np; ++k) {
            CaseOutcome& o = out.outcomes[c * np + k];
            o.spec = spec;
            o.kind = cfg.propagators[k];
            if (failure != FailureKind::none) {
                o.failure = failure;
                o.error = error;
                continue;
            }
            try {
                o.result = evaluate_case(spec, o.kind, cfg.model, truth);
            } catch (const std::exception& e) {
                o.failure = classify(e);
                o.error = e.what();
            }
        }
    });
    if (cfg.timing_evaluations > 0) {
        for (auto& o : out.outcomes) {
            if (!o.result) continue;
            const auto grid = case_grid(o.spec);
            const DriPropagator prop(case_initial_polar(o.spec, cfg.model),
                                     PropagatorConfig{order_of(o.kind), cfg.model});
            o.result->timing = time_samples(prop, grid, cfg.timing_evaluations);
        }
    }
    return out;
}

inline std::string record_file_name(const CaseOutcome& o) {
    return o.spec.name + "_" + to_string(o.kind) + ".csv";
}

/// Per-case CSVs, summary.csv (error statistics) and timing.csv.
/// Everything except timing.csv is deterministic for a fixed config.
inline void write_results(const GridResults& results, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());

    std::string summary =
        "case,propagator,e,i_deg,days,samples,max_dr_m,rms_dr_m,max_dv_mps,rms_dv_mps,max_dpos_m,status\n";
    std::string timing = "case,propagator,ns_per_sample,evaluations\n";
    for (const auto& o : results.outcomes) {
        summary += o.spec.name + ',' + to_string(o.kind) + ',' + format_exact(o.spec.elements.e) + ',' +
                   format_exact(o.spec.elements.i / kDeg) + ',' + format_exact(o.spec.duration_days) + ',';
        if (!o.result) {
            std::string msg = o.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            summary += ",,,,,,error: " + msg + '\n';
            continue;
        }
        const auto& s = o.result->summary;
        summary += std::to_string(s.samples) + ',' + format_scientific(s.max_dr_m) + ',' +
                   format_scientific(s.rms_dr_m) + ',' + format_scientific(s.max_dv_mps) + ',' +
                   format_scientific(s.rms_dv_mps) + ',' + format_scientific(s.max_dpos_m) + ',';
        summary += o.result->warnings.empty() ? std::string("ok") : std::string("warning: ") + to_string(o.result->warnings.front());
        summary += '\n';
        emit_csv(o.result->records, dir / record_file_name(o));
        if (o.result->timing)
            timing += o.spec.name + ',' + to_string(o.kind) + ',' + format_exact(o.result->timing->ns_per_sample) +
                      ',' + std::to_string(o.result->timing->evaluations) + '\n';
    }
    std::ofstream(dir / "summary.csv", std::ios::binary) << summary;
    std::ofstream(dir / "timing.csv", std::ios::binary) << timing;
}

// ---------------------------------------------------------------------------
// Timing against propagation horizon

struct HorizonTiming {
    double early_ns = 0.0;  ///< per-sample cost over the first day
    double late_ns = 0.0;   ///< per-sample cost over the last day of `horizon_days`

    double ratio() const { return late_ns / early_ns; }
};

/// Compares per-sample cost of day 1 against the final day, each over
/// `samples` evaluations; the best of `repeats` interleaved runs is kept.
inline HorizonTiming horizon_timing(const DriPropagator& prop, double horizon_days, std::size_t samples = 10000,
                                    int repeats = 7) {
    auto grid_from = [&](double start_day) {
        std::vector<double> g(samples);
        const double t0 = start_day * kSecondsPerDay;
        for (std::size_t k = 0; k < samples; ++k)
            g[k] = t0 + kSecondsPerDay * static_cast<double>(k) / static_cast<double>(samples);
        return g;
    };
    const auto early = grid_from(0.0);
    const auto late = grid_from(horizon_days - 1.0);
    HorizonTiming best{1e300, 1e300};
    for (int r = 0; r < repeats; ++r) {
        best.early_ns = std::min(best.early_ns, time_samples(prop, early, samples).ns_per_sample);
        best.late_ns = std::min(best.late_ns, time_samples(prop, late, samples).ns_per_sample);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Parameter sweep

struct SweepRow {
    std::string param;
    double value = 0.0;
    double e = 0.0;
    double i_deg = 0.0;
    PropagatorKind kind = PropagatorKind::dri2;
    ErrorSummary summary;
    std::string status;
};

struct SweepSpec {
    std::string param = "e";  ///< "e" or "i" [deg]
    double from = 0.0;
    double to = 0.1;
    int steps = 21;
    std::vector<double> inclinations_deg{5.0, 55.0, 89.0};  ///< used when sweeping e
    double eccentricity = 0.005;                            ///< used when sweeping i
    double duration_days = 30.0;
    double step_s = kDefaultStepSeconds;
    std::vector<PropagatorKind> propagators{PropagatorKind::dri2};
};

inline std::vector<double> sweep_values(const SweepSpec& s) {
    if (s.steps < 1) throw ConfigError("sweep: steps must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(s.steps));
    for (int k = 0; k < s.steps; ++k)
        v[k] = s.steps == 1 ? s.from : s.from + (s.to - s.from) * static_cast<double>(k) / (s.steps - 1);
    return v;
}

/// Reference-LEO cases along the swept parameter.
inline std::vector<CaseSpec> sweep_cases(const SweepSpec& s) {
    std::vector<CaseSpec> cases;
    if (s.param == "e") {
        for (double e : sweep_values(s))
            for (double i : s.inclinations_deg)
                cases.push_back({case_name(e, i, s.duration_days), reference_leo(e, i), s.duration_days, s.step_s});
    } else if (s.param == "i") {
        for (double i : sweep_values(s))
            cases.push_back({case_name(s.eccentricity, i, s.duration_days), reference_leo(s.eccentricity, i),
                             s.duration_days, s.step_s});
    } else {
        throw ConfigError("sweep: unsupported parameter '" + s.param + "' (expected e or i)");
    }
    return cases;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& s, const GravityModel& model,
                                       const IntegratorConfig& integrator, const TruthCache& cache,
                                       unsigned threads = 0) {
    BenchmarkConfig cfg;
    cfg.model = model;
    cfg.integrator = integrator;
    cfg.cases = sweep_cases(s);
    cfg.propagators = s.propagators;
    cfg.timing_evaluations = 0;
    if (cfg.propagators.empty()) throw ConfigError("sweep: at least one propagator is required");
    const GridResults grid = run_grid(cfg, cache, threads);
    std::vector<SweepRow> rows;
    for (const auto& o : grid.outcomes) {
        SweepRow row;
        row.param = s.param;
        row.value = s.param == "e" ? o.spec.elements.e : o.spec.elements.i / kDeg;
        row.e = o.spec.elements.e;
        row.i_deg = o.spec.elements.i / kDeg;
        row.kind = o.kind;
        if (o.result) {
            row.summary = o.result->summary;
            row.status = o.result->warnings.empty() ? "ok" : to_string(o.result->warnings.front());
        } else {
            row.status = "error: " + o.error;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_sweep(std::span<const SweepRow> rows, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path.string(), "cannot open for writing");
    os << "param,value,e,i_deg,propagator,max_dr_m,rms_dr_m,max_dv_mps,rms_dv_mps,max_dpos_m,status\n";
    for (const auto& r : rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        os << r.param << ',' << format_exact(r.value) << ',' << format_exact(r.e) << ','
           << format_exact(r.i_deg) << ',' << to_string(r.kind) << ',' << format_scientific(r.summary.max_dr_m)
           << ',' << format_scientific(r.summary.rms_dr_m) << ',' << format_scientific(r.summary.max_dv_mps) << ','
           << format_scientific(r.summary.rms_dv_mps) << ',' << format_scientific(r.summary.max_dpos_m) << ','
           << status << '\n';
    }
}

}  // namespace dri::bench
