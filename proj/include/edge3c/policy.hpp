#pragma once

// Optimal randomized caching (water-filling with a Lagrange multiplier), the
// two reference policies, and the large-library regime breakpoints.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "edge3c/model.hpp"

namespace edge3c {

/// Solver state of the multiplier search.
///
/// The optimal policy is p(f) = min(1, [-(1/k') ln(zeta / (k' w(f)))]^+) for
/// weights w (the popularity). budget(zeta) = sum_f p(f) is non-increasing in
/// zeta, so zeta is located by bisection (carried out on ln zeta).
struct SolverState {
  double zeta = 0.0;
  double nu = 0.0;                    // (zeta / k')^(1/k')
  std::vector<double> z;              // w(f)^(1/k'), empty unless requested
  std::pair<double, double> bracket;  // (zeta_lo, zeta_hi) at termination
  int iterations = 0;
};

struct PolicySolution {
  CachingPolicy policy;
  SolverState state;
};

/// Water-filling on log-weights: minimizes sum_f exp(lw(f)) exp(-k' p(f))
/// subject to sum p = budget and 0 <= p <= 1. Weights need not be sorted or
/// normalized. Throws BudgetInfeasible when budget is outside [0, M].
PolicySolution water_fill(std::span<const double> log_weights, double kappa_prime,
                          double budget, bool keep_z = false);

CachingPolicy optimal_policy(const Popularity& pop, double kappa_prime, double budget);

/// Same as optimal_policy for arbitrary positive (possibly un-normalized) weights.
CachingPolicy optimal_policy_for_weights(std::span<const double> weights, double kappa_prime,
                                         double budget);

/// p(f) = 1 for f <= floor(S), the fractional remainder at the next index, 0 after.
CachingPolicy most_popular_policy(std::size_t library_size, double budget);

CachingPolicy uniform_policy(std::size_t library_size, double budget);

enum class Regime { I, II, III };

const char* to_string(Regime r);

/// Asymptotic breakpoints of the optimal policy.
struct RegimeReport {
  Regime regime = Regime::II;      // used by the analytics dispatch
  Regime predicted = Regime::II;   // classification from the asymptotic breakpoints
  double m1 = 0.0;                 // c1 S
  double m2 = 0.0;                 // c2 S
  double c1 = 0.0;
  double c2 = 0.0;
  double m_star = 0.0;             // min(S k' / gamma, M)
  double C1 = 1.0;                 // root of C1 - ln C1 = (k'/gamma)(1 - C2) + 1
  double C2 = 1.0;                 // S / M
  double C1_residual = 0.0;
};

/// Solves C - ln C = rhs for C in (0, 1]. Throws NoRoot if rhs < 1.
double solve_c1(double rhs, double* residual = nullptr);

/// Fills every breakpoint and classifies the regime: m2 < M is regime I,
/// otherwise m1 < 1 is regime II, otherwise regime III. Requires gamma >= 0;
/// gamma = 0 is handled as the limit k'/gamma -> infinity.
RegimeReport regime_breakpoints(const SystemParams& params, const DerivedParams& derived);

/// Breakpoints read off an explicit policy.
struct ObservedBreakpoints {
  std::size_t ones = 0;          // number of entries equal to 1 (head)
  std::size_t last_nonzero = 0;  // largest f with p(f) > 0, 0 if none
  Regime regime = Regime::II;
};

ObservedBreakpoints observe_breakpoints(const CachingPolicy& policy);

/// Overrides report.regime by the structure of an exact policy. At finite M
/// the asymptotic labels can disagree with the policy actually computed.
RegimeReport reconcile(RegimeReport report, const CachingPolicy& exact_policy);

}  // namespace edge3c
