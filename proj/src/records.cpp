#include <cmath>
#include <limits>
#include <stdexcept>

#include "asgo/drivers.hpp"
#include "json.hpp"

namespace asgo {

namespace {

using nlohmann::json;

constexpr int kSchema = 1;

// JSON has no infinities; non-finite values are written as the strings "inf", "-inf", "nan".
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("run record: bad number '" + s + "'");
}

}  // namespace

std::string to_json_line(const RunRecord& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"k", e.k},
                       {"d_k", e.d_k},
                       {"f_k", number(e.f_k)},
                       {"f_best", number(e.f_best)},
                       {"eval_units", e.eval_units},
                       {"wall_ms", e.wall_ms}});
  json x = json::array();
  for (Eigen::Index i = 0; i < r.x_opt.size(); ++i) x.push_back(number(r.x_opt(i)));

  json j = {{"schema", kSchema},
            {"function", r.function},
            {"D", r.D},
            {"d_e", r.d_e},
            {"objective_seed", r.objective_seed},
            {"algorithm", std::string(to_string(r.algorithm))},
            {"seed", r.seed},
            {"grad_mode", std::string(to_string(r.grad_mode))},
            {"entries", std::move(entries)},
            {"x_opt", std::move(x)},
            {"f_opt", number(r.f_opt)},
            {"f_star", r.f_star ? number(*r.f_star) : json(nullptr)},
            {"eps", r.eps},
            {"d_est", r.d_est},
            {"success", r.success},
            {"termination", std::string(to_string(r.termination))},
            {"eval_units", r.eval_units},
            {"wall_s", r.wall_s}};
  return j.dump();
}

RunRecord parse_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("run record: ") + e.what());
  }
  try {
    if (j.at("schema").get<int>() != kSchema)
      throw std::invalid_argument("run record: unsupported schema " + j.at("schema").dump());
    RunRecord r;
    r.function = j.at("function").get<std::string>();
    r.D = j.at("D").get<int>();
    r.d_e = j.at("d_e").get<int>();
    r.objective_seed = j.at("objective_seed").get<std::uint64_t>();
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.grad_mode = parse_grad_mode(j.at("grad_mode").get<std::string>());
    for (const auto& e : j.at("entries"))
      r.entries.push_back({e.at("k").get<int>(), e.at("d_k").get<int>(), number(e.at("f_k")),
                           number(e.at("f_best")), e.at("eval_units").get<std::int64_t>(),
                           e.at("wall_ms").get<double>()});
    const auto& x = j.at("x_opt");
    r.x_opt.resize(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) r.x_opt(static_cast<Eigen::Index>(i)) = number(x[i]);
    r.f_opt = number(j.at("f_opt"));
    if (!j.at("f_star").is_null()) r.f_star = number(j.at("f_star"));
    r.eps = j.at("eps").get<double>();
    r.d_est = j.at("d_est").get<int>();
    r.success = j.at("success").get<bool>();
    r.termination = parse_termination(j.at("termination").get<std::string>());
    r.eval_units = j.at("eval_units").get<std::int64_t>();
    r.wall_s = j.at("wall_s").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("run record: ") + e.what());
  }
}

}  // namespace asgo
