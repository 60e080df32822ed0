#include "edge3c/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "edge3c/error.hpp"

namespace edge3c {
namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// (1 - gamma) e^gamma, the constant separating the optimal and uniform policies.
double zipf_gain(double gamma) { return (1.0 - gamma) * std::exp(gamma); }

// (1 - C1) C1^{gamma C1 / (1 - C1)} e^{-k' (C2 - C1) / (1 - C1)}; zero at C1 = 1.
double interior_factor(double gamma, double kp, double c1_big, double c2_big) {
  if (c1_big >= 1.0) return 0.0;
  const double w = 1.0 - c1_big;
  return w * std::pow(c1_big, gamma * c1_big / w) * std::exp(-kp * (c2_big - c1_big) / w);
}

// (c2 - c1) c2^{-gamma} (c2/c1)^{-gamma c1/(c2-c1)} e^{-(1-c1) k'/(c2-c1)}.
// ln(c2/c1) equals k'/gamma exactly, which keeps the power finite when c1
// underflows.
double transition_factor(double gamma, double kp, const RegimeReport& r) {
  const double x = kp / gamma;
  const double span = r.c2 - r.c1;
  return span * std::pow(r.c2, -gamma) * std::exp(-gamma * r.c1 * x / span) *
         std::exp(-(1.0 - r.c1) * kp / span);
}

}  // namespace

const char* to_string(Source s) {
  switch (s) {
    case Source::Theorem4: return "theorem4";
    case Source::Theorem5: return "theorem5";
    case Source::Theorem6: return "theorem6";
    case Source::Theorem7: return "theorem7";
    case Source::Theorem8: return "theorem8";
    case Source::Theorem9: return "theorem9";
    case Source::Theorem10: return "theorem10";
    case Source::Corollary6_1: return "corollary6.1";
    case Source::Corollary10_1: return "corollary10.1";
    case Source::Corollary10_1_LargeKappa: return "corollary10.1-large-kappa";
    case Source::MostPopularFormula: return "most-popular-formula";
    case Source::MostPopularBounds: return "most-popular-bounds";
    case Source::UniformFormula: return "uniform-formula";
  }
  return "?";
}

OutageBounds OutageBounds::make(double raw_lower, double raw_upper, Source source) {
  OutageBounds b;
  b.raw_lower = raw_lower;
  b.raw_upper = raw_upper;
  b.lower = clamp01(raw_lower);
  b.upper = clamp01(raw_upper);
  b.source = source;
  return b;
}

double task_success_prob(std::size_t f, const CachingPolicy& policy, const DerivedParams& derived) {
  if (f < 1 || f > policy.size()) throw Error(ErrorKind::DomainError, "task index out of range");
  return -std::expm1(-derived.kappa_prime * policy(f));
}

double outage(const CachingPolicy& policy, const Popularity& pop, double kappa_prime) {
  if (policy.size() != pop.size) {
    throw Error(ErrorKind::DomainError, "policy and popularity sizes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pop.size; ++i) {
    sum += pop.pmf[i] * std::exp(-kappa_prime * policy.probs[i]);
  }
  return sum;
}

double outage(const CachingPolicy& policy, const Popularity& pop, const DerivedParams& derived) {
  return outage(policy, pop, derived.kappa_prime);
}

AsymptoticOutage asymptotic_outage_lt1(const SystemParams& params, const DerivedParams& derived,
                                       const RegimeReport& regime) {
  const double g = params.zipf_gamma;
  if (!(g < 1.0)) throw Error(ErrorKind::WrongBranch, "gamma < 1 results need gamma < 1");
  const double kp = derived.kappa_prime;
  const double ratio = params.cache_size / static_cast<double>(params.library_size);

  AsymptoticOutage out;
  out.corollary_large_kappa = zipf_gain(g) * std::exp(-ratio * kp);
  out.corollary = out.corollary_large_kappa + std::pow(regime.C1, 1.0 - g) * std::exp(-kp);

  switch (regime.regime) {
    case Regime::I: {
      const double bracket = std::pow(regime.c2, 1.0 - g) -
                             std::pow(regime.c1, 1.0 - g) * std::exp(-kp) -
                             zipf_gain(g) * transition_factor(g, kp, regime);
      out.value = 1.0 - bracket * std::pow(ratio, 1.0 - g);
      out.source = Source::Theorem4;
      break;
    }
    case Regime::II:
      out.value = zipf_gain(g) * std::exp(-ratio * kp);
      out.source = Source::Theorem5;
      break;
    case Regime::III:
      out.value = zipf_gain(g) * interior_factor(g, kp, regime.C1, regime.C2) +
                  std::exp(-kp) * std::pow(regime.C1, 1.0 - g);
      out.source = Source::Theorem6;
      break;
  }
  return out;
}

AsymptoticBounds asymptotic_outage_gt1(const SystemParams& params, const DerivedParams& derived,
                                       const RegimeReport& regime) {
  const double g = params.zipf_gamma;
  if (!(g > 1.0)) throw Error(ErrorKind::WrongBranch, "gamma > 1 bounds need gamma > 1");
  const double kp = derived.kappa_prime;
  const double s = params.cache_size;
  const double mm = static_cast<double>(params.library_size);
  const double e_k = std::exp(-kp);
  const double m_pow = std::pow(mm, 1.0 - g);  // (1/M)^{gamma-1}
  const double s_pow = std::pow(s, 1.0 - g);   // (1/S)^{gamma-1}
  const double lead = (g - 1.0) * std::exp(g);

  AsymptoticBounds out;
  switch (regime.regime) {
    case Regime::I: {
      if (regime.m1 < 1.0) {
        const double a = (lead * std::pow(regime.c2, 1.0 - g) * std::exp(-kp / regime.c2) +
                          std::pow(regime.c2, 1.0 - g)) *
                         s_pow;
        out.bounds = OutageBounds::make(a / g - m_pow / g, a - m_pow, Source::Theorem7);
      } else {
        const double t = lead * transition_factor(g, kp, regime) + std::pow(regime.c2, 1.0 - g);
        const double lower = e_k / g - m_pow / g +
                             (t - e_k * std::pow(regime.c1 + 1.0 / s, 1.0 - g)) * s_pow / g;
        const double upper = g * e_k - m_pow + (t - e_k * std::pow(regime.c1, 1.0 - g)) * s_pow;
        out.bounds = OutageBounds::make(lower, upper, Source::Theorem8);
      }
      break;
    }
    case Regime::II: {
      const double v = lead * m_pow * std::exp(-s * kp / mm);
      out.bounds = OutageBounds::make(v / g, v, Source::Theorem9);
      break;
    }
    case Regime::III: {
      const double v = lead * interior_factor(g, kp, regime.C1, regime.C2) * m_pow;
      out.bounds = OutageBounds::make(e_k / g + v / g, g * e_k + v, Source::Theorem10);
      const double w = lead * m_pow * std::exp(-s * kp / mm);
      out.corollary = OutageBounds::make(e_k / g + w / g, g * e_k + w, Source::Corollary10_1);
      out.corollary_large_kappa = OutageBounds::make(w / g, w, Source::Corollary10_1_LargeKappa);
      break;
    }
  }
  return out;
}

OutageBounds reference_outage(ReferenceKind kind, const SystemParams& params,
                              const DerivedParams& derived) {
  const double g = params.zipf_gamma;
  if (g == 1.0) throw Error(ErrorKind::WrongBranch, "reference formulas exclude gamma = 1");
  const double kp = derived.kappa_prime;
  const double s = params.cache_size;
  const double mm = static_cast<double>(params.library_size);

  if (kind == ReferenceKind::Uniform) {
    return OutageBounds::point(std::exp(-kp * s / mm), Source::UniformFormula);
  }
  if (g < 1.0) {
    const double v = 1.0 - (-std::expm1(-kp)) * std::pow(s / mm, 1.0 - g);
    return OutageBounds::point(v, Source::MostPopularFormula);
  }
  const double e_k = std::exp(-kp);
  const double head = std::pow(s + 1.0, 1.0 - g);  // (1/(S+1))^{gamma-1}
  const double tail = std::pow(s, 1.0 - g) - std::pow(mm + 1.0, 1.0 - g);
  const double lower = (1.0 - head) * e_k / g + tail / g;
  const double upper = (g - head) * e_k + tail;
  return OutageBounds::make(lower, upper, Source::MostPopularBounds);
}

double effective_snr(const SystemParams& params, const DerivedParams& derived,
                     double target_outage) {
  const double g = params.zipf_gamma;
  if (!(g < 1.0)) throw Error(ErrorKind::WrongBranch, "effective SNR needs gamma < 1");
  const double ceiling = zipf_gain(g);
  if (!(target_outage > 0.0 && target_outage < ceiling)) {
    std::ostringstream os;
    os << "target outage " << target_outage << " outside (0, " << ceiling << ")";
    throw Error(ErrorKind::DomainError, os.str());
  }
  if (!(params.cache_size > 0.0)) {
    throw Error(ErrorKind::DomainError, "effective SNR needs a positive cache size");
  }
  const double log_term = std::log(ceiling / target_outage);
  const double base = derived.kappa * params.cache_size /
                      (static_cast<double>(params.library_size) * log_term);
  return derived.snr * std::pow(base, params.pathloss / 2.0);
}

DelayPoint min_latency(const SystemParams& params, const DerivedParams& derived,
                       double target_outage) {
  DelayPoint dp;
  dp.eta_eff = effective_snr(params, derived, target_outage);
  const double bits = params.upload_bits + params.download_bits;
  dp.comm_delay = bits * std::numbers::ln2 / (params.bandwidth * std::log1p(dp.eta_eff));
  dp.compute_delay = compute_delay(params);
  dp.d_star = dp.comm_delay + dp.compute_delay;
  if (dp.compute_delay == 0.0 && dp.eta_eff > 1.0) {
    dp.comm_only_approx = bits / (params.bandwidth * std::log2(dp.eta_eff));
  }
  return dp;
}

}  // namespace edge3c
