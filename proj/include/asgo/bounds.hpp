#pragma once

// Sampling-complexity and success-probability calculators. All inputs are
// range-checked; violations throw std::invalid_argument.

namespace asgo {

/// 4 λ₁ L² / (λ_k² (1 − τ)²) · log(k / α)
double sampling_lower_bound(double lambda1, double lambdak, double L, int k, double tau,
                            double alpha);

/// ⌈4 λ₁ L² / λ_de² · log d_e⌉ + 1
int m_zero(double lambda1, double lambda_de, double L, int d_e);

/// 1 − exp(−λ_de² / (4 λ₁ L²))
double tau_const(double lambda1, double lambda_de, double L);

/// ⌈|log(1 − ξ)| / (τ γ)⌉ + M₀ − 1
int k_xi(double xi, double tau, double gamma, int M0);

/// 1 − (1 − τ γ)^(K − M₀ + 1)
double success_floor(int K, double tau, double gamma, int M0);

}  // namespace asgo
