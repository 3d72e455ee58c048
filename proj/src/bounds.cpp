#include "asgo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace asgo {

namespace {

void require(bool ok, const char* fn, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string(fn) + ": " + what);
}

void check_spectrum(const char* fn, double lambda1, double lambdak, double L) {
  require(std::isfinite(lambda1) && std::isfinite(lambdak) && std::isfinite(L), fn,
          "inputs must be finite");
  require(lambdak > 0.0, fn, "lambda_k must be > 0");
  require(lambda1 >= lambdak, fn, "lambda1 must be >= lambda_k");
  require(L > 0.0, fn, "L must be > 0");
}

// 4 λ₁ L² / λ_k², arranged so that (β²λ₁, β²λ_k, βL) reproduces the value
// to rounding: each factor is itself scale-free.
double spectral_ratio(double lambda1, double lambdak, double L) {
  return 4.0 * (lambda1 / lambdak) * (L / lambdak * L);
}

// Guards the ceiling against an argument that is an integer up to rounding.
int ceil_int(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(v));
}

}  // namespace

double sampling_lower_bound(double lambda1, double lambdak, double L, int k, double tau,
                            double alpha) {
  constexpr const char* fn = "sampling_lower_bound";
  check_spectrum(fn, lambda1, lambdak, L);
  require(k >= 1, fn, "k must be >= 1");
  require(tau >= 0.0 && tau < 1.0, fn, "tau must lie in [0, 1)");
  require(alpha > 0.0 && alpha <= 1.0, fn, "alpha must lie in (0, 1]");
  return spectral_ratio(lambda1, lambdak, L) / ((1.0 - tau) * (1.0 - tau)) *
         std::log(static_cast<double>(k) / alpha);
}

int m_zero(double lambda1, double lambda_de, double L, int d_e) {
  constexpr const char* fn = "m_zero";
  check_spectrum(fn, lambda1, lambda_de, L);
  require(d_e >= 1, fn, "d_e must be >= 1");
  return ceil_int(spectral_ratio(lambda1, lambda_de, L) * std::log(static_cast<double>(d_e))) + 1;
}

double tau_const(double lambda1, double lambda_de, double L) {
  constexpr const char* fn = "tau_const";
  check_spectrum(fn, lambda1, lambda_de, L);
  return -std::expm1(-1.0 / spectral_ratio(lambda1, lambda_de, L));
}

int k_xi(double xi, double tau, double gamma, int M0) {
  constexpr const char* fn = "k_xi";
  require(xi >= 0.0 && xi < 1.0, fn, "xi must lie in [0, 1)");
  require(tau > 0.0 && tau < 1.0, fn, "tau must lie in (0, 1)");
  require(gamma > 0.0 && gamma <= 1.0, fn, "gamma must lie in (0, 1]");
  require(M0 >= 1, fn, "M0 must be >= 1");
  return ceil_int(std::abs(std::log1p(-xi)) / (tau * gamma)) + M0 - 1;
}

double success_floor(int K, double tau, double gamma, int M0) {
  constexpr const char* fn = "success_floor";
  require(tau >= 0.0 && tau <= 1.0, fn, "tau must lie in [0, 1]");
  require(gamma >= 0.0 && gamma <= 1.0, fn, "gamma must lie in [0, 1]");
  require(M0 >= 1, fn, "M0 must be >= 1");
  if (K < M0) {
    std::ostringstream msg;
    msg << "K = " << K << " is below M0 = " << M0;
    require(false, fn, msg.str());
  }
  return 1.0 - std::pow(1.0 - tau * gamma, K - M0 + 1);
}

}  // namespace asgo
