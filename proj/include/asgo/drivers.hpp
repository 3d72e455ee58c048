#pragma once

// The six optimization drivers and the run record they produce.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asgo/objectives.hpp"
#include "asgo/solver.hpp"
#include "asgo/subspace.hpp"

namespace asgo {

enum class Algorithm { asm_go, a_asm, asm_1, a_rego, rego_1, no_embedding };

/// CLI names: asm-go, a-asm, asm-1, a-rego, rego-1, no-embedding.
std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

enum class Termination { stagnation, basis_stalled, max_embeddings, single_shot };
std::string_view to_string(Termination t);
Termination parse_termination(std::string_view name);

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::asm_1;
  GradMode grad_mode = GradMode::analytic;
  SamplingDistribution rho;
  /// Initial incumbent; zero vector when empty.
  std::optional<Vector> p0;
  double eps = 1e-3;
  double stagnation_gamma = 1e-5;
  double gs_tol = 1e-6;
  int gs_patience = 5;
  /// Defaults to D.
  std::optional<int> max_embeddings;
  /// Sample count (ASM-1) or embedding dimension (REGO-1); defaults to d_e.
  std::optional<int> M;
  SolverOptions solver;
  std::uint64_t seed = 0;
  /// ASM-1 only: use the exact effective basis U instead of sampling.
  bool oracle_basis = false;
  GradientCost gradient_cost = GradientCost::per_coordinate;
  /// Called with (k, A^k) for every embedding; not serialized.
  std::function<void(int, const Matrix&)> on_embedding;

  void validate(int ambient_dim) const;
};

struct EmbeddingEntry {
  int k = 0;
  int d_k = 0;
  /// f(x^k) after clipping to the incumbent.
  double f_k = 0.0;
  double f_best = 0.0;
  std::int64_t eval_units = 0;
  double wall_ms = 0.0;
};

struct RunRecord {
  std::string function;
  int D = 0;
  int d_e = 0;
  std::uint64_t objective_seed = 0;
  Algorithm algorithm = Algorithm::asm_1;
  std::uint64_t seed = 0;
  GradMode grad_mode = GradMode::analytic;
  std::vector<EmbeddingEntry> entries;
  Vector x_opt;
  double f_opt = 0.0;
  std::optional<double> f_star;
  double eps = 1e-3;
  int d_est = 0;
  bool success = false;
  Termination termination = Termination::single_shot;
  std::int64_t eval_units = 0;
  double wall_s = 0.0;
};

RunRecord asm_go(const EmbeddedObjective& obj, const AlgorithmConfig& cfg);
RunRecord a_asm(const EmbeddedObjective& obj, const AlgorithmConfig& cfg);
RunRecord asm_1(const EmbeddedObjective& obj, int M, const AlgorithmConfig& cfg);
RunRecord a_rego(const EmbeddedObjective& obj, const AlgorithmConfig& cfg);
RunRecord rego_1(const EmbeddedObjective& obj, int d, const AlgorithmConfig& cfg);
RunRecord no_embedding(const EmbeddedObjective& obj, const AlgorithmConfig& cfg);

/// Dispatches on cfg.algorithm.
RunRecord run(const EmbeddedObjective& obj, const AlgorithmConfig& cfg);

/// f_opt ≤ f_star + eps (inclusive).
bool check_success(const RunRecord& record, double f_star, double eps);

/// Same record with every timing field zeroed, for comparisons.
RunRecord without_timing(RunRecord record);

// Line-delimited JSON, one object per record, with "schema": 1.
std::string to_json_line(const RunRecord& record);
RunRecord parse_json_line(std::string_view line);

}  // namespace asgo
