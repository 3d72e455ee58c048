#include <fstream>
#include <limits>
#include <stdexcept>

#include "asgo/bench.hpp"
#include "asgo/kernels.hpp"
#include "json.hpp"

namespace asgo {

namespace {

using nlohmann::json;

template <class T>
std::vector<T> list_of(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("suite config: missing '") + key + "'");
  return j.at(key).get<std::vector<T>>();
}

}  // namespace

SuiteSpec load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("suite config " + path.string() + ": " + e.what());
  }

  SuiteSpec spec;
  try {
    if (j.at("functions").is_string()) {
      if (j.at("functions").get<std::string>() != "all")
        throw std::invalid_argument("suite config: functions must be a list or \"all\"");
      for (const auto& f : benchmark_table()) spec.functions.push_back(f.name);
    } else {
      spec.functions = list_of<std::string>(j, "functions");
    }
    spec.dims = list_of<int>(j, "dims");
    if (j.at("algorithms").is_string()) {
      if (j.at("algorithms").get<std::string>() != "all")
        throw std::invalid_argument("suite config: algorithms must be a list or \"all\"");
      spec.algorithms = all_algorithms();
    } else {
      for (const auto& name : list_of<std::string>(j, "algorithms"))
        spec.algorithms.push_back(parse_algorithm(name));
    }
    spec.seeds = list_of<std::uint64_t>(j, "seeds");

    AlgorithmConfig& c = spec.config;
    if (j.contains("grad")) c.grad_mode = parse_grad_mode(j.at("grad").get<std::string>());
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("M")) c.M = j.at("M").get<int>();
    if (j.contains("max_embeddings")) c.max_embeddings = j.at("max_embeddings").get<int>();
    if (j.contains("starts")) c.solver.n_starts = j.at("starts").get<int>();
    if (j.contains("start_range")) c.solver.start_halfwidth = j.at("start_range").get<double>() / 2;
    if (j.contains("grad_tol")) c.solver.grad_tol = j.at("grad_tol").get<double>();
    if (j.contains("gradient_cost")) {
      const auto cost = j.at("gradient_cost").get<std::string>();
      if (cost == "per_coordinate") c.gradient_cost = GradientCost::per_coordinate;
      else if (cost == "raw") c.gradient_cost = GradientCost::raw;
      else throw std::invalid_argument("suite config: unknown gradient_cost '" + cost + "'");
    }
    if (j.contains("parallel")) spec.parallel_cells = j.at("parallel").get<bool>();
  } catch (const json::exception& e) {
    throw std::invalid_argument("suite config " + path.string() + ": " + e.what());
  }
  return spec;
}

ResultRow to_result_row(const RunRecord& r) {
  return {r.function,
          r.D,
          std::string(to_string(r.algorithm)),
          r.seed,
          r.success ? static_cast<double>(r.eval_units) : std::numeric_limits<double>::infinity(),
          r.wall_s,
          r.success,
          r.d_est};
}

ResultTable run_suite(const SuiteSpec& spec, std::vector<RunRecord>* records) {
  if (spec.functions.empty() || spec.dims.empty() || spec.algorithms.empty() || spec.seeds.empty())
    throw std::invalid_argument("run_suite: functions, dims, algorithms and seeds must be non-empty");

  std::vector<BaseFunction> bases;
  for (const auto& name : spec.functions) bases.push_back(find_function(name));
  for (int D : spec.dims)
    for (const auto& b : bases)
      if (D < b.dim)
        throw std::invalid_argument("run_suite: D = " + std::to_string(D) + " is below d_e of " + b.name);

  struct Cell {
    std::size_t base;
    int D;
    Algorithm algorithm;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (int D : spec.dims)
      for (Algorithm a : spec.algorithms)
        for (std::uint64_t s : spec.seeds) cells.push_back({b, D, a, s});

  std::vector<RunRecord> out(cells.size());
  kernels::for_each_index(cells.size(), spec.parallel_cells, [&](std::size_t i) {
    const Cell& cell = cells[i];
    AlgorithmConfig cfg = spec.config;
    cfg.algorithm = cell.algorithm;
    cfg.seed = cell.seed;
    if (spec.parallel_cells) cfg.solver.parallel = false;
    const EmbeddedObjective obj = make_embedded(bases[cell.base], cell.D, cell.seed);
    out[i] = run(obj, cfg);
  });

  ResultTable table;
  table.reserve(out.size());
  for (const auto& r : out) table.push_back(to_result_row(r));
  if (records) *records = std::move(out);
  return table;
}

}  // namespace asgo
