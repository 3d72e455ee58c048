#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "asgo/bench.hpp"

namespace asgo {

namespace {

double cost(const ResultRow& r, ProfileMetric metric) {
  if (!r.success) return std::numeric_limits<double>::infinity();
  return metric == ProfileMetric::evals ? r.eval_units : r.wall_s;
}

using Problem = std::pair<std::string, int>;

// seed -> problem -> algorithm -> cost
using Costs = std::map<std::uint64_t, std::map<Problem, std::map<std::string, double>>>;

Costs collect(const ResultTable& table, ProfileMetric metric) {
  Costs c;
  for (const auto& r : table) c[r.seed][{r.function, r.D}][r.algorithm] = cost(r, metric);
  return c;
}

double best_finite(const std::map<std::string, double>& by_alg) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [alg, v] : by_alg) best = std::min(best, v);
  return best;
}

}  // namespace

ProfileMetric parse_profile_metric(std::string_view name) {
  if (name == "evals") return ProfileMetric::evals;
  if (name == "time") return ProfileMetric::time;
  throw std::invalid_argument("unknown profile metric '" + std::string(name) +
                              "' (expected evals or time)");
}

std::vector<double> default_alpha_grid(const ResultTable& table, ProfileMetric metric, int points) {
  if (points < 2) throw std::invalid_argument("default_alpha_grid: need at least 2 points");
  double max_ratio = 1.0;
  for (const auto& [seed, problems] : collect(table, metric))
    for (const auto& [problem, by_alg] : problems) {
      const double best = best_finite(by_alg);
      if (!std::isfinite(best) || best <= 0.0) continue;
      for (const auto& [alg, v] : by_alg)
        if (std::isfinite(v)) max_ratio = std::max(max_ratio, v / best);
    }
  const double hi = std::log(2.0 * max_ratio);
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::exp(hi * i / (points - 1));
  grid.front() = 1.0;
  return grid;
}

std::vector<ProfileCurve> perf_profile(const ResultTable& table, ProfileMetric metric,
                                       std::optional<std::vector<double>> alpha_grid) {
  const std::vector<double> grid = alpha_grid ? *alpha_grid : default_alpha_grid(table, metric);
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()) || grid.front() < 1.0)
    throw std::invalid_argument("perf_profile: alpha grid must be sorted and start at >= 1");

  std::vector<std::string> algorithms;
  for (const auto& r : table)
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
      algorithms.push_back(r.algorithm);

  std::vector<ProfileCurve> curves;
  for (const auto& [seed, problems] : collect(table, metric)) {
    // Ratios per algorithm over the problems some algorithm solved.
    std::map<std::string, std::vector<double>> ratios;
    std::size_t kept = 0;
    for (const auto& [problem, by_alg] : problems) {
      const double best = best_finite(by_alg);
      if (!std::isfinite(best)) continue;
      ++kept;
      for (const auto& alg : algorithms) {
        const auto it = by_alg.find(alg);
        const double v = it == by_alg.end() ? std::numeric_limits<double>::infinity() : it->second;
        double ratio = std::numeric_limits<double>::infinity();
        if (std::isfinite(v)) ratio = best > 0.0 ? v / best : (v > 0.0 ? ratio : 1.0);
        ratios[alg].push_back(ratio);
      }
    }
    for (const auto& alg : algorithms) {
      ProfileCurve c{alg, seed, grid, std::vector<double>(grid.size(), 0.0)};
      if (kept > 0) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const auto n = std::count_if(ratios[alg].begin(), ratios[alg].end(),
                                       [&](double r) { return r <= grid[i]; });
          c.pi[i] = static_cast<double>(n) / static_cast<double>(kept);
        }
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

}  // namespace asgo
