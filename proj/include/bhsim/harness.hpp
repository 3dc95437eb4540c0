#pragma once

#include "bhsim/bh_ledger.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bhsim {

struct KrausConfig {
    bool random = true;
    int dim = 0;
    int outcomes = 0;
    std::uint64_t seed = 0;
    std::vector<Matrix> explicit_ops;
};

struct ExperimentConfig {
    double mass = 1.0;
    double omega = 1.0;
    int truncation = 2;
    KrausConfig kraus;
    std::vector<int> drop_set;
    std::vector<Matrix> inside_unitaries;
    std::optional<double> radius;
    double slack = 0.0;
    OptimizerSettings optimizer;
    TailMode tail_mode = TailMode::faithful;
};

/// Strict JSON config ingestion: unknown fields are rejected at every
/// level; throws std::invalid_argument naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Work-integral input: {"beta": .., "steps": .., "path": [matrix, ..]}
/// with matrices as row-major nested arrays of [re, im] pairs.
WorkIntegralSpec load_work_integral_spec(const std::string& path);

struct ReportRow {
    long instance_id = 0;
    std::uint64_t seed = 0;
    int dim = 0;
    int n_kraus = 0;
    double p_drop = 0.0;
    double delta_w = 0.0;
    double delta_f = 0.0;
    double delta_s_bh = 0.0;
    double s_m = 0.0;
    double s_m_prime = 0.0;
    double delta_s_t = 0.0;
    double holevo_hd = 0.0;
    double acc_info = 0.0;
    double margin_gsl = 0.0;
    double margin_holevo = 0.0;
    double margin_info = 0.0;
    double energy_residual = 0.0;
    double wall_time_ms = 0.0;
};

ReportRow run_experiment(const ExperimentConfig& cfg, long instance_id = 0);

struct SweepRanges {
    int dim_max = 6;
    int kraus_max = 4;
    double slack = 0.0;
};

/// Derives a deterministic per-instance config from master_seed +
/// instance_id and runs the full pipeline.
ExperimentConfig sweep_instance_config(std::uint64_t master_seed, long instance_id,
                                       const SweepRanges& ranges);
std::vector<ReportRow> sweep(int n, const SweepRanges& ranges,
                             std::uint64_t master_seed);

/// CSV with fixed header and 17-significant-digit values. Timing is
/// excluded by default (column written as 0) so repeated runs are
/// byte-identical.
std::string to_csv(const std::vector<ReportRow>& rows, bool include_timings = false);

/// Min-margin / max-residual summary line for human consumption.
std::string sweep_summary(const std::vector<ReportRow>& rows);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // worst observed value against the bound
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_pass() const;
};

/// Known suites: gsl, holevo, washout, matter-entropy, dilation,
/// saturation, dataproc, workintegral, or "all". `instances` scales the
/// randomized sample counts (0 = suite default).
VerifyReport verify(const std::string& suite, int instances = 0);

const std::vector<std::string>& verify_suite_names();

}  // namespace bhsim
