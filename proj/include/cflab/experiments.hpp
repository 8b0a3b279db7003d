#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cflab/sampling.hpp"
#include "cflab/sequences.hpp"
#include "cflab/stats.hpp"

namespace cflab {

enum class ReportFormat { csv, json };

/// One experiment run: which statistic family to compute, over how many
/// samples, how deep, and where the report goes.
struct ExperimentConfig {
    std::string experiment;  // expand|levy|delta|theta|bjw|benford-qn|ud-suite|
                             // approx-k|quadratic|skew
    int samples = 100;
    int depth = 2000;
    std::uint64_t seed = 0;
    LogBase base = LogBase::decimal;
    double rho = 0.0;                     // extra n*rho drift for benford-qn
    int l = 0;                            // Gauss-map shift for skew's inner sum
    std::vector<int> k_list = {4, 8, 16};  // approx-k window sizes
    Measure measure = Measure::gauss;
    std::string out;  // report path; empty writes to stdout
    ReportFormat format = ReportFormat::csv;
    std::string x;  // expand's input, "p/q"
    int bits = 0;   // sampler precision, 0 = auto
};

/// One report line. Aggregate rows use sample_index = -1. pass is present
/// exactly when tolerance is, and always means value <= tolerance.
struct ReportRow {
    std::string experiment;
    long long sample_index = -1;
    std::uint64_t seed = 0;
    int depth = 0;
    std::string statistic;
    double value = 0.0;
    std::optional<double> tolerance;
    std::optional<bool> pass;
};

struct RunResult {
    std::vector<ReportRow> rows;
    int exit_code = 0;        // 0 = all tolerance rows pass, 1 = some failed
    std::string stdout_text;  // extra human-readable output (expand)
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Long-form flag parser (--name value). Throws ConfigError on unknown
/// flags or violated invariants; throws HelpRequested after --help.
struct HelpRequested {
    std::string text;
};
ExperimentConfig parse_flags(const std::vector<std::string>& args);

RunResult run(const ExperimentConfig& cfg);

/// 0 iff every tolerance-tagged row passes, judging each (statistic,
/// sample_index) pair by its deepest row only: experiments with heuristic
/// tolerances double the depth once before declaring failure, and the
/// retried rows supersede the first attempt.
int exit_from_rows(const std::vector<ReportRow>& rows);

std::string report_to_string(const std::vector<ReportRow>& rows, ReportFormat format);
void write_report(const RunResult& result, const ExperimentConfig& cfg);

/// Worker count used by run(): the WORKERS environment variable if set to a
/// positive integer, otherwise the hardware concurrency.
int worker_count();

}  // namespace cflab
