#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aos/engine.hpp"

namespace aos {

struct NamedConfig {
    std::string name;
    RunConfig config;
};

struct BatchSpec {
    std::vector<std::string> instances;
    std::vector<NamedConfig> configs;
    std::size_t runs = 30;
    std::uint64_t base_seed = 1;
    std::string output_dir;
    std::size_t jobs = 1;
    bool write_traces = true;

    void validate() const;
};

/// Batch file: top-level `runs`, `base_seed`, `output_dir`, `jobs`, `write_traces` and
/// repeated `instance` keys, followed by `[config NAME]` sections of run settings. A section
/// may start with `config_file = path` to load a base configuration.
[[nodiscard]] BatchSpec parse_batch_spec(std::istream& in, const std::string& base_dir = {});
[[nodiscard]] BatchSpec load_batch_spec(const std::string& path);

struct RunRecord {
    std::string instance;
    std::string config;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double best = 0.0;
    std::uint64_t best_iteration = 0;
    std::uint64_t iterations = 0;
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

struct CellSummary {
    std::string instance;
    std::string config;
    std::vector<double> bests;
    std::size_t failures = 0;
    double min = 0.0;
    double std = 0.0;
    double median = 0.0;
    double mean = 0.0;
};

struct PairwiseTest {
    std::string instance;
    std::string config_a;
    std::string config_b;
    double p_value = 1.0;
    bool exact = false;
};

struct BatchReport {
    std::vector<RunRecord> runs;
    std::vector<CellSummary> cells;
    std::vector<PairwiseTest> tests;

    [[nodiscard]] const CellSummary* find(std::string_view instance, std::string_view config) const;
};

/// Instance label used in reports: file name without directory and extension.
[[nodiscard]] std::string instance_label(const std::string& path);

/// Executes every (instance, config, run) with seed base_seed + run, then aggregates. When
/// output_dir is set, writes runs.csv, summary.csv, summary.json, pvalues.csv and, if enabled,
/// one trace CSV per run under traces/.
[[nodiscard]] BatchReport run_batch(const BatchSpec& spec);

/// Groups successful runs by (instance, config) in first-seen order and adds pairwise tests
/// between configurations on each instance.
[[nodiscard]] BatchReport summarize(std::vector<RunRecord> runs);

void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs);
[[nodiscard]] std::vector<RunRecord> read_runs_csv(std::istream& in);
void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells);
void write_summary_json(std::ostream& out, const BatchReport& report);
void write_pvalues_csv(std::ostream& out, std::span<const PairwiseTest> tests);

enum class FigureKind { OpFrequency, EntropySeries, ThetaSeries, FitnessSeries };

[[nodiscard]] FigureKind parse_figure_kind(std::string_view name);

/// Whitespace-separated columns with a '#' header line:
///   op_frequency   -> op count        (one row per operator code, sorted by code)
///   entropy_series -> iteration entropy
///   theta_series   -> iteration theta
///   fitness_series -> iteration mean_q best
void emit_figure_data(std::ostream& out, std::span<const TraceRecord> trace, FigureKind kind);

} // namespace aos
