#pragma once

// Closed-form outage, large-library asymptotics for gamma < 1, bound pairs for
// gamma > 1, and the delay-side reformulation (effective SNR, minimum latency).

#include <cstddef>
#include <optional>
#include <utility>

#include "edge3c/model.hpp"
#include "edge3c/policy.hpp"

namespace edge3c {

/// Which closed-form result produced a number.
enum class Source {
  Theorem4,
  Theorem5,
  Theorem6,
  Theorem7,
  Theorem8,
  Theorem9,
  Theorem10,
  Corollary6_1,
  Corollary10_1,
  Corollary10_1_LargeKappa,
  MostPopularFormula,   // reference policy, gamma < 1 point value
  MostPopularBounds,    // reference policy, gamma > 1 bound pair
  UniformFormula,
};

const char* to_string(Source s);

/// A lower/upper pair. lower/upper are clamped to [0,1]; raw_* keep the
/// values as printed, which can fall outside [0,1] for small S.
struct OutageBounds {
  double lower = 0.0;
  double upper = 1.0;
  double raw_lower = 0.0;
  double raw_upper = 1.0;
  Source source = Source::Theorem9;

  bool contains(double v) const { return raw_lower <= v && v <= raw_upper; }
  static OutageBounds make(double raw_lower, double raw_upper, Source source);
  static OutageBounds point(double value, Source source) { return make(value, value, source); }
};

/// Asymptotic optimal outage for gamma < 1.
struct AsymptoticOutage {
  double value = 0.0;
  Source source = Source::Theorem5;
  /// (1-gamma) e^gamma e^{-S k'/M} + C1^{1-gamma} e^{-k'}
  double corollary = 0.0;
  /// (1-gamma) e^gamma e^{-S k'/M}, the large-k' reduction
  double corollary_large_kappa = 0.0;
};

/// Bound pair for gamma > 1 plus the simplified pairs when regime III applies.
struct AsymptoticBounds {
  OutageBounds bounds;
  std::optional<OutageBounds> corollary;
  std::optional<OutageBounds> corollary_large_kappa;
};

/// 1 - exp(-k' p(f)) for 1-based index f.
double task_success_prob(std::size_t f, const CachingPolicy& policy, const DerivedParams& derived);

/// sum_f P_r(f) exp(-k' p(f)).
double outage(const CachingPolicy& policy, const Popularity& pop, double kappa_prime);
double outage(const CachingPolicy& policy, const Popularity& pop, const DerivedParams& derived);

/// Theorems 4/5/6 selected by regime.regime. Throws WrongBranch if gamma >= 1.
AsymptoticOutage asymptotic_outage_lt1(const SystemParams& params, const DerivedParams& derived,
                                       const RegimeReport& regime);

/// Theorems 7/8 (regime I, split at m1 < 1), 9 (II) and 10 (III).
/// Throws WrongBranch if gamma <= 1.
AsymptoticBounds asymptotic_outage_gt1(const SystemParams& params, const DerivedParams& derived,
                                       const RegimeReport& regime);

enum class ReferenceKind { MostPopular, Uniform };

/// Outage of a reference policy. Point values are returned with lower == upper.
/// Throws WrongBranch when gamma == 1.
OutageBounds reference_outage(ReferenceKind kind, const SystemParams& params,
                              const DerivedParams& derived);

struct DelayPoint {
  double eta_eff = 0.0;
  double d_star = 0.0;
  double comm_delay = 0.0;
  double compute_delay = 0.0;
  /// (F^U+F^D) / (B log2 eta_eff); only set when compute delay is zero and
  /// eta_eff > 1.
  std::optional<double> comm_only_approx;
};

/// eta (kappa S)^{alpha/2} / (M ln((1-gamma)e^gamma / P_o))^{alpha/2}.
/// Needs gamma < 1 (WrongBranch) and 0 < P_o < (1-gamma)e^gamma (DomainError).
double effective_snr(const SystemParams& params, const DerivedParams& derived,
                     double target_outage);

DelayPoint min_latency(const SystemParams& params, const DerivedParams& derived,
                       double target_outage);

}  // namespace edge3c
