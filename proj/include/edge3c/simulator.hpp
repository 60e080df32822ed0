#pragma once

// Monte Carlo check of the coverage-based success probability: a Poisson field
// of BSs holding the requested dataset, Nakagami-m power fading, and
// association to the strongest received power.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "edge3c/model.hpp"

namespace edge3c {

struct TrialConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  double radius = 0.0;  // simulation disk radius; 0 selects it from truncation_eps
  double truncation_eps = 1e-4;
  double radius_cap = std::numeric_limits<double>::infinity();
  unsigned threads = 1;
  bool stratified = false;  // simulate_outage: allocate trials per task by P_r(f)
};

struct OutageEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Expected number of BSs (density lambda p) beyond distance R whose received
/// SNR still clears 2^rho - 1. Closed form through regularized incomplete gamma
/// functions: p [k' Q(m+delta, m t) - lambda pi R^2 Q(m, m t)], t = (T/eta) R^alpha.
double expected_tail_count(const SystemParams& params, double p, double radius);

/// Smallest R with expected_tail_count(params, p_max, R) < eps.
double truncation_radius(const SystemParams& params, double p_max, double eps);

/// Fraction of trials in which task f (1-based) completes within D.
OutageEstimate simulate_task_success(std::size_t f, const CachingPolicy& policy,
                                     const SystemParams& params, const TrialConfig& cfg);

/// Fraction of trials that miss the deadline, tasks drawn from the Zipf pmf.
OutageEstimate simulate_outage(const CachingPolicy& policy, const Popularity& pop,
                               const SystemParams& params, const TrialConfig& cfg);

/// Per-trial number of BSs that would individually meet the deadline for task f.
std::vector<std::uint32_t> qualified_counts(std::size_t f, const CachingPolicy& policy,
                                            const SystemParams& params, const TrialConfig& cfg);

/// Per-trial generator seed: a mix of the run seed and the trial index.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace edge3c
