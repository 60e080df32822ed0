#pragma once

// Network variants: a dedicated backhaul with availability P_Ba, the backhaul
// combined with the cache, hierarchical caching behind the backhaul, and the
// co-located vs distributed cache comparison.

#include <cstddef>
#include <optional>
#include <utility>

#include "edge3c/model.hpp"
#include "edge3c/policy.hpp"

namespace edge3c {

struct BackhaulParams {
  double avail_prob = 0.0;  // P_Ba
  double latency = 0.0;     // d_B, seconds
  double storage = 0.0;     // S_B, datasets held by the external storage
  double kappa_B = 0.0;     // kappa' with D - d_B in place of D
};

/// Validates the backhaul settings against params and fills kappa_B.
/// Throws InfeasibleLatency when D - d_B leaves no time after computing.
BackhaulParams make_backhaul(const SystemParams& params, double avail_prob, double latency,
                             double storage = 0.0);

/// exp(-P_Ba kappa_B).
double backhaul_only_outage(const BackhaulParams& bh);

/// exp(-P_Ba kappa_B) * sum_f P_r(f) exp(-k' p(f)).
double cache_plus_backhaul_outage(const CachingPolicy& policy, const Popularity& pop,
                                  const DerivedParams& derived, const BackhaulParams& bh);

struct HierarchicalResult {
  CachingPolicy bs;       // p_c
  CachingPolicy storage;  // P_{c,B}
  double outage = 0.0;    // sum_f P_r e^{-k' p_c} e^{-kappa_B P_{c,B}}
  int sweeps = 0;
  double kkt_residual = 0.0;  // log-space, see kkt_residual()
  /// Uniform external storage with the BS cache optimized for it. Always
  /// feasible, so outage <= uniform_storage_outage.
  double uniform_storage_outage = 0.0;
};

/// Joint optimization of the BS and storage policies by block-coordinate
/// descent; each block is an exact water-filling. Throws BudgetInfeasible
/// when either budget is outside [0, M].
HierarchicalResult hierarchical_optimize(const Popularity& pop, double kappa_prime,
                                         double cache_size, const BackhaulParams& bh);

/// Approximate upper bound (1-gamma) e^gamma exp(-(k' S + kappa_B S_B) / M) on
/// the hierarchical optimum. Only meaningful for gamma < 1; WrongBranch otherwise.
double hierarchical_approx_upper(const SystemParams& params, const DerivedParams& derived,
                                 const BackhaulParams& bh);

/// Largest KKT violation of one block, measured on log marginals
/// ln(k w_f) - k p_f - (other exposure). Zero iff the block is optimal given
/// the other block.
double kkt_residual(const Popularity& pop, const CachingPolicy& block, double kappa,
                    const CachingPolicy& other, double other_kappa);

enum class ColocationMode { Asymptotic, Exact };

/// Outage at (lambda, S) and at (c lambda, S / c). Asymptotic mode evaluates
/// (1-gamma) e^gamma e^{-S k'/M}; exact mode solves the optimal policy at
/// both points. Requires gamma < 1 (WrongBranch) and S / c <= M.
std::pair<double, double> colocated_vs_distributed(const SystemParams& params, double scale,
                                                   ColocationMode mode = ColocationMode::Asymptotic);

}  // namespace edge3c
