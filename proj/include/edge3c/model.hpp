#pragma once

// System model: physical/task/library parameters, the derived constants that
// collapse them into a single exponent (kappa'), and Zipf popularity.

#include <cstddef>
#include <span>
#include <vector>

namespace edge3c {

/// Raw parameters of the network, the task and the dataset library.
///
/// Units: density in BS per unit area (the area unit fixes the length unit of
/// every distance elsewhere), powers in watts, bandwidth in Hz, compute rate in
/// cycles/s, task sizes in bits, latency in seconds.
struct SystemParams {
  double lambda_bs = 1e-5;           // BS density
  double tx_power = 1.0;             // P
  double noise_power = 1e-12;        // sigma_n^2
  double pathloss = 4.0;             // alpha, must exceed 2
  double nakagami_m = 1.0;           // m_D >= 1/2
  double bandwidth = 10e6;           // B
  double compute_rate = 1e10;        // E_c
  double upload_bits = 1e6;          // F^U
  double download_bits = 1e6;        // F^D
  double compute_scale_up = 100.0;   // nu^U, cycles per uploaded bit
  double compute_scale_down = 0.0;   // nu^D, cycles per downloaded bit
  double latency = 0.1;              // D
  std::size_t library_size = 1000;   // M
  double cache_size = 100.0;         // S, real-valued
  double zipf_gamma = 0.6;           // gamma
};

/// Constants derived from SystemParams.
struct DerivedParams {
  double delta = 0.0;          // 2 / alpha
  double snr = 0.0;            // eta = P / sigma^2
  double kappa = 0.0;          // pi lambda Gamma(delta+m) / (m^delta Gamma(m))
  double required_rate = 0.0;  // rho, bits/s/Hz
  double threshold = 0.0;      // 2^rho - 1, the SNR a link must reach
  double kappa_prime = 0.0;    // kappa (eta / (2^rho - 1))^delta
  double kappa_T = 0.0;        // S kappa' / M
  bool asymptotic_valid = false;  // gamma != 1
};

/// Zipf request distribution over M tasks.
struct Popularity {
  std::size_t size = 0;
  double gamma = 0.0;
  std::vector<double> pmf;  // pmf[f-1] = f^-gamma / norm
  double norm = 0.0;        // H(1, M, gamma)

  double operator()(std::size_t f) const { return pmf[f - 1]; }
};

/// Marginal caching probabilities p_c(f), f = 1..M, summing to the budget S.
struct CachingPolicy {
  std::vector<double> probs;
  double budget = 0.0;

  std::size_t size() const { return probs.size(); }
  double operator()(std::size_t f) const { return probs[f - 1]; }
};

/// Cycles needed per task divided by the compute rate.
double compute_delay(const SystemParams& params);

/// Returns params unchanged when every invariant holds; throws Error
/// (DomainError or InfeasibleLatency) naming the first violation otherwise.
/// gamma == 1 is accepted here; asymptotic operations reject it themselves.
SystemParams validate_params(const SystemParams& raw);

/// Rejects gamma == 1 (and non-finite gamma) for the asymptotic operations.
void require_asymptotic_gamma(double gamma);

DerivedParams derive(const SystemParams& params);

/// kappa' evaluated for an arbitrary deadline in place of params.latency.
/// Throws InfeasibleLatency if the deadline does not exceed the compute delay.
double kappa_prime_for_deadline(const SystemParams& params, double deadline);

/// pi lambda Gamma(delta + m) / (m^delta Gamma(m)).
double kappa_constant(double lambda_bs, double delta, double nakagami_m);

/// H(a, b, gamma) = sum_{m=a}^{b} m^-gamma by direct accumulation.
double partial_sum(std::size_t a, std::size_t b, double gamma);

Popularity zipf(std::size_t library_size, double gamma);

/// Throws DomainError unless every entry is in [0,1] and the entries sum to
/// the budget within tol * max(1, budget).
void check_policy(const CachingPolicy& policy, double tol = 1e-9);

}  // namespace edge3c
