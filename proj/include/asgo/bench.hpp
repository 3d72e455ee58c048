#pragma once

// Experiment harness: suite runs, performance profiles, the sampling study,
// and the flat-file formats they are written in.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asgo/drivers.hpp"

namespace asgo {

struct ResultRow {
  std::string function;
  int D = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  /// Evaluation units, +inf when the run failed.
  double eval_units = 0.0;
  double wall_s = 0.0;
  bool success = false;
  int d_est = 0;

  bool operator==(const ResultRow&) const = default;
};

using ResultTable = std::vector<ResultRow>;

struct SuiteSpec {
  std::vector<std::string> functions;
  std::vector<int> dims;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint64_t> seeds;
  /// Template for every cell; algorithm and seed are overwritten per cell.
  AlgorithmConfig config;
  /// Run cells concurrently (each cell then solves serially).
  bool parallel_cells = true;
};

/// Reads a suite definition from a JSON file. Schema:
///   functions: list of names or "all"; dims: list of ints;
///   algorithms: list of names or "all"; seeds: list of ints;
///   optional: grad ("analytic"|"fd"), eps, M, max_embeddings, starts,
///   start_range, grad_tol, gradient_cost ("per_coordinate"|"raw"), parallel.
SuiteSpec load_suite_config(const std::filesystem::path& path);

/// Rejects unknown names before running anything. Objective and algorithm
/// share the cell seed. Rows come out in (function, D, algorithm, seed) order.
ResultTable run_suite(const SuiteSpec& spec, std::vector<RunRecord>* records = nullptr);

ResultRow to_result_row(const RunRecord& record);

enum class ProfileMetric { evals, time };
ProfileMetric parse_profile_metric(std::string_view name);

struct ProfileCurve {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<double> alpha;
  std::vector<double> pi;
};

/// 64 log-spaced points on [1, 2 · largest finite ratio] (upper end at least 2).
std::vector<double> default_alpha_grid(const ResultTable& table, ProfileMetric metric,
                                       int points = 64);

/// Per-seed Dolan–Moré curves: for each seed, the problems are the (function, D)
/// pairs of that seed; a problem every algorithm failed is left out.
std::vector<ProfileCurve> perf_profile(const ResultTable& table, ProfileMetric metric,
                                       std::optional<std::vector<double>> alpha_grid = {});

struct SamplingStudyRow {
  std::uint64_t seed = 0;
  /// Smallest M with numeric rank d_e; empty when censored at max_M.
  std::optional<int> min_M;
  /// rank_by_M[M - 1] = numeric rank of Ĉ from the first M samples.
  std::vector<int> rank_by_M;
};

/// Nested samples: Ĉ_M uses the first M gradients of one stream per seed.
/// With full_curve=false the scan stops at the first M reaching d_e.
std::vector<SamplingStudyRow> sampling_study(const BaseFunction& base, int D, int max_M,
                                             const std::vector<std::uint64_t>& seeds,
                                             const SamplingDistribution& rho,
                                             GradMode mode = GradMode::analytic,
                                             bool full_curve = false, bool parallel = true);

/// Median min-M with censored seeds counted as max_M + 1.
double median_min_M(const std::vector<SamplingStudyRow>& rows, int max_M);

// Files. Doubles are written in shortest round-trip form, infinity as `inf`.
// I/O failures throw std::runtime_error naming the path.
void write_results_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_results_csv(const std::filesystem::path& path);
void write_profile_csv(const std::vector<ProfileCurve>& curves, const std::filesystem::path& path);
std::vector<ProfileCurve> read_profile_csv(const std::filesystem::path& path);
void write_sampling_csv(const std::vector<SamplingStudyRow>& rows, int max_M,
                        const std::filesystem::path& path);
void write_records_jsonl(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> read_records_jsonl(const std::filesystem::path& path);

std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace asgo
