#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "asgo/bench.hpp"

namespace asgo {

namespace {

constexpr const char* kResultsHeader = "function,D,algorithm,seed,eval_units,wall_s,success,d_est";
constexpr const char* kProfileHeader = "algorithm,seed,alpha,pi";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class Int>
Int parse_int(std::string_view text, const std::filesystem::path& path) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error(path.string() + ": bad integer '" + std::string(text) + "'");
  return v;
}

void expect_header(std::ifstream& in, const char* header, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw std::runtime_error(path.string() + ": expected header '" + header + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("bad number '" + std::string(text) + "'");
  return v;
}

void write_results_csv(const ResultTable& table, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kResultsHeader << '\n';
  for (const auto& r : table)
    out << r.function << ',' << r.D << ',' << r.algorithm << ',' << r.seed << ','
        << format_double(r.eval_units) << ',' << format_double(r.wall_s) << ','
        << (r.success ? 1 : 0) << ',' << r.d_est << '\n';
  close_out(out, path);
}

ResultTable read_results_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, kResultsHeader, path);
  ResultTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw std::runtime_error(path.string() + ": expected 8 fields in '" + line + "'");
    try {
      table.push_back({f[0], parse_int<int>(f[1], path), f[2], parse_int<std::uint64_t>(f[3], path),
                       parse_double(f[4]), parse_double(f[5]), parse_int<int>(f[6], path) != 0,
                       parse_int<int>(f[7], path)});
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }
  return table;
}

void write_profile_csv(const std::vector<ProfileCurve>& curves, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kProfileHeader << '\n';
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.alpha.size(); ++i)
      out << c.algorithm << ',' << c.seed << ',' << format_double(c.alpha[i]) << ','
          << format_double(c.pi[i]) << '\n';
  close_out(out, path);
}

std::vector<ProfileCurve> read_profile_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, kProfileHeader, path);
  std::vector<ProfileCurve> curves;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 4) throw std::runtime_error(path.string() + ": expected 4 fields in '" + line + "'");
    const auto seed = parse_int<std::uint64_t>(f[1], path);
    if (curves.empty() || curves.back().algorithm != f[0] || curves.back().seed != seed)
      curves.push_back({f[0], seed, {}, {}});
    try {
      curves.back().alpha.push_back(parse_double(f[2]));
      curves.back().pi.push_back(parse_double(f[3]));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }
  return curves;
}

void write_sampling_csv(const std::vector<SamplingStudyRow>& rows, int max_M,
                        const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "seed,min_M,censored,max_M\n";
  for (const auto& r : rows)
    out << r.seed << ',' << (r.min_M ? std::to_string(*r.min_M) : "inf") << ','
        << (r.min_M ? 0 : 1) << ',' << max_M << '\n';
  close_out(out, path);
}

void write_records_jsonl(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& r : records) out << to_json_line(r) << '\n';
  close_out(out, path);
}

std::vector<RunRecord> read_records_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace asgo
