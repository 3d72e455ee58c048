#include <algorithm>
#include <stdexcept>

#include "asgo/bench.hpp"
#include "asgo/kernels.hpp"

namespace asgo {

namespace {
constexpr std::uint64_t kStudyStream = 0x5354;
}

std::vector<SamplingStudyRow> sampling_study(const BaseFunction& base, int D, int max_M,
                                             const std::vector<std::uint64_t>& seeds,
                                             const SamplingDistribution& rho, GradMode mode,
                                             bool full_curve, bool parallel) {
  if (max_M < 1) throw std::invalid_argument("sampling_study: max_M must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("sampling_study: no seeds");
  rho.validate(D);

  std::vector<SamplingStudyRow> rows(seeds.size());
  kernels::for_each_index(seeds.size(), parallel, [&](std::size_t i) {
    const std::uint64_t seed = seeds[i];
    const EmbeddedObjective obj = make_embedded(base, D, seed);
    Rng rng = Rng(seed).split(kStudyStream);
    EvalTally unused;
    // Points are drawn one at a time, so a prefix of length M is the same
    // whether or not later samples are taken.
    GradientEnsemble ens{Matrix(D, 0), Matrix(D, 0)};
    SamplingStudyRow& row = rows[i];
    row.seed = seed;
    for (int M = 1; M <= max_M; ++M) {
      const auto one = sample_gradients(obj, 1, rho, rng, mode, unused);
      ens.points.conservativeResize(Eigen::NoChange, M);
      ens.gradients.conservativeResize(Eigen::NoChange, M);
      ens.points.col(M - 1) = one.points.col(0);
      ens.gradients.col(M - 1) = one.gradients.col(0);
      const int rank = estimate_C(ens).d;
      row.rank_by_M.push_back(rank);
      if (rank == obj.effective_dim() && !row.min_M) {
        row.min_M = M;
        if (!full_curve) break;
      }
    }
  });
  return rows;
}

double median_min_M(const std::vector<SamplingStudyRow>& rows, int max_M) {
  if (rows.empty()) throw std::invalid_argument("median_min_M: no rows");
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.min_M ? *r.min_M : max_M + 1);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace asgo
