#include "edge3c/variants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "edge3c/analytics.hpp"
#include "edge3c/error.hpp"

namespace edge3c {
namespace {

constexpr int kMaxSweeps = 500;
constexpr double kKktTarget = 1e-9;

double joint_outage(const Popularity& pop, const CachingPolicy& p, double kp,
                    const CachingPolicy& q, double kb) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pop.size; ++i) {
    sum += pop.pmf[i] * std::exp(-kp * p.probs[i] - kb * q.probs[i]);
  }
  return sum;
}

// Water-filling for one block with the other block's exposure folded into
// the weights.
CachingPolicy best_response(const Popularity& pop, double kappa, double budget,
                            const CachingPolicy& other, double other_kappa) {
  std::vector<double> lw(pop.size);
  for (std::size_t i = 0; i < pop.size; ++i) {
    lw[i] = std::log(pop.pmf[i]) - other_kappa * other.probs[i];
  }
  return water_fill(lw, kappa, budget).policy;
}

}  // namespace

BackhaulParams make_backhaul(const SystemParams& params, double avail_prob, double latency,
                             double storage) {
  if (!(avail_prob >= 0.0 && avail_prob <= 1.0)) {
    throw Error(ErrorKind::DomainError, "backhaul availability must be in [0,1]");
  }
  if (!(latency >= 0.0 && latency < params.latency)) {
    throw Error(ErrorKind::DomainError, "backhaul latency must be in [0, D)");
  }
  if (!(storage >= 0.0 && storage <= static_cast<double>(params.library_size))) {
    throw Error(ErrorKind::DomainError, "external storage must be in [0, M]");
  }
  BackhaulParams bh;
  bh.avail_prob = avail_prob;
  bh.latency = latency;
  bh.storage = storage;
  bh.kappa_B = kappa_prime_for_deadline(params, params.latency - latency);
  return bh;
}

double backhaul_only_outage(const BackhaulParams& bh) { return std::exp(-bh.avail_prob * bh.kappa_B); }

double cache_plus_backhaul_outage(const CachingPolicy& policy, const Popularity& pop,
                                  const DerivedParams& derived, const BackhaulParams& bh) {
  return backhaul_only_outage(bh) * outage(policy, pop, derived.kappa_prime);
}

double kkt_residual(const Popularity& pop, const CachingPolicy& block, double kappa,
                    const CachingPolicy& other, double other_kappa) {
  // Optimality: some ln(zeta) sits between every marginal that could still
  // grow (p < 1) and every marginal that could still shrink (p > 0).
  double could_grow = -std::numeric_limits<double>::infinity();
  double could_shrink = std::numeric_limits<double>::infinity();
  const double log_k = std::log(kappa);
  for (std::size_t i = 0; i < pop.size; ++i) {
    const double p = block.probs[i];
    const double marginal =
        log_k + std::log(pop.pmf[i]) - kappa * p - other_kappa * other.probs[i];
    if (p < 1.0) could_grow = std::max(could_grow, marginal);
    if (p > 0.0) could_shrink = std::min(could_shrink, marginal);
  }
  if (!std::isfinite(could_grow) || !std::isfinite(could_shrink)) return 0.0;
  return std::max(0.0, could_grow - could_shrink);
}

HierarchicalResult hierarchical_optimize(const Popularity& pop, double kappa_prime,
                                         double cache_size, const BackhaulParams& bh) {
  const double mm = static_cast<double>(pop.size);
  if (!(cache_size >= 0.0 && cache_size <= mm) || !(bh.storage >= 0.0 && bh.storage <= mm)) {
    throw Error(ErrorKind::BudgetInfeasible, "cache and storage budgets must be in [0, M]");
  }
  const double kb = bh.kappa_B;

  HierarchicalResult r;
  r.storage = uniform_policy(pop.size, 0.0);
  r.bs = best_response(pop, kappa_prime, cache_size, r.storage, kb);
  r.uniform_storage_outage = std::exp(-kb * bh.storage / mm) * outage(r.bs, pop, kappa_prime);
  const CachingPolicy uniform_bs = r.bs;

  double prev = joint_outage(pop, r.bs, kappa_prime, r.storage, kb);
  for (r.sweeps = 1; r.sweeps <= kMaxSweeps; ++r.sweeps) {
    r.storage = best_response(pop, kb, bh.storage, r.bs, kappa_prime);
    r.bs = best_response(pop, kappa_prime, cache_size, r.storage, kb);
    r.outage = joint_outage(pop, r.bs, kappa_prime, r.storage, kb);
    r.kkt_residual = std::max(kkt_residual(pop, r.bs, kappa_prime, r.storage, kb),
                              kkt_residual(pop, r.storage, kb, r.bs, kappa_prime));
    const double decrease = prev - r.outage;
    prev = r.outage;
    if (r.kkt_residual < kKktTarget) break;
    // Objective decrease is judged relative to the objective, which can be
    // many orders of magnitude below one.
    if (decrease >= 0.0 && decrease < 1e-10 * r.outage) break;
  }
  r.sweeps = std::min(r.sweeps, kMaxSweeps);
  // Ties with the uniform-storage start can land an ulp above it.
  if (r.outage > r.uniform_storage_outage) {
    r.storage = uniform_policy(pop.size, bh.storage);
    r.bs = uniform_bs;
    r.outage = r.uniform_storage_outage;
    r.kkt_residual = std::max(kkt_residual(pop, r.bs, kappa_prime, r.storage, kb),
                              kkt_residual(pop, r.storage, kb, r.bs, kappa_prime));
  }
  return r;
}

double hierarchical_approx_upper(const SystemParams& params, const DerivedParams& derived,
                                 const BackhaulParams& bh) {
  const double g = params.zipf_gamma;
  if (!(g < 1.0)) throw Error(ErrorKind::WrongBranch, "hierarchical bound needs gamma < 1");
  const double mm = static_cast<double>(params.library_size);
  return (1.0 - g) * std::exp(g) *
         std::exp(-(derived.kappa_prime * params.cache_size + bh.kappa_B * bh.storage) / mm);
}

std::pair<double, double> colocated_vs_distributed(const SystemParams& params, double scale,
                                                   ColocationMode mode) {
  const double g = params.zipf_gamma;
  if (!(g < 1.0)) throw Error(ErrorKind::WrongBranch, "co-location comparison needs gamma < 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::DomainError, "scale must be positive");
  }
  SystemParams scaled = params;
  scaled.lambda_bs *= scale;
  scaled.cache_size /= scale;
  if (scaled.cache_size > static_cast<double>(params.library_size)) {
    throw Error(ErrorKind::DomainError, "scaled cache size exceeds the library");
  }

  auto evaluate = [&](const SystemParams& p) {
    const DerivedParams d = derive(p);
    if (mode == ColocationMode::Asymptotic) {
      return (1.0 - g) * std::exp(g) *
             std::exp(-p.cache_size * d.kappa_prime / static_cast<double>(p.library_size));
    }
    const Popularity pop = zipf(p.library_size, g);
    return outage(optimal_policy(pop, d.kappa_prime, p.cache_size), pop, d.kappa_prime);
  };
  return {evaluate(params), evaluate(scaled)};
}

}  // namespace edge3c
