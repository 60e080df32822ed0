#include "edge3c/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edge3c/error.hpp"

namespace edge3c {
namespace {

constexpr int kMaxBisection = 200;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Budget consumed when every level is shifted down by s.
double budget_at(std::span<const double> level, double s) {
  double sum = 0.0;
  for (double a : level) sum += clamp01(a - s);
  return sum;
}

// Given the active set at shift s, solve the piecewise-linear budget equation
// exactly. Returns s unchanged when the active set would change.
double refine_shift(std::span<const double> level, double s, double budget) {
  double ones = 0.0;
  double interior_sum = 0.0;
  std::size_t interior = 0;
  for (double a : level) {
    const double v = a - s;
    if (v >= 1.0) {
      ones += 1.0;
    } else if (v > 0.0) {
      interior_sum += a;
      ++interior;
    }
  }
  if (interior == 0) return s;
  const double exact = (interior_sum - (budget - ones)) / static_cast<double>(interior);
  for (double a : level) {
    const double before = a - s;
    const double after = a - exact;
    const bool was_one = before >= 1.0;
    const bool was_zero = before <= 0.0;
    if (was_one != (after >= 1.0) || was_zero != (after <= 0.0)) return s;
  }
  return exact;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
  }
  return "?";
}

PolicySolution water_fill(std::span<const double> log_weights, double kappa_prime,
                          double budget, bool keep_z) {
  const std::size_t m = log_weights.size();
  const double mm = static_cast<double>(m);
  if (m == 0) throw Error(ErrorKind::DomainError, "empty library");
  if (!(kappa_prime > 0.0) || !std::isfinite(kappa_prime)) {
    throw Error(ErrorKind::DomainError, "kappa' must be positive and finite");
  }
  if (!(budget >= 0.0) || budget > mm) {
    std::ostringstream os;
    os << "budget " << budget << " outside [0, " << m << "]";
    throw Error(ErrorKind::BudgetInfeasible, os.str());
  }

  // level(f) = ln(k' w_f) / k'; p(f) = clamp(level(f) - ln(zeta)/k').
  std::vector<double> level(m);
  const double log_k = std::log(kappa_prime);
  double lo_level = std::numeric_limits<double>::infinity();
  double hi_level = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(log_weights[i])) {
      throw Error(ErrorKind::DomainError, "weights must be positive and finite");
    }
    level[i] = (log_k + log_weights[i]) / kappa_prime;
    lo_level = std::min(lo_level, level[i]);
    hi_level = std::max(hi_level, level[i]);
  }

  PolicySolution out;
  out.policy.budget = budget;
  out.policy.probs.assign(m, 0.0);
  const double tol = 1e-9 * std::max(1.0, budget);

  double shift;
  if (hi_level == lo_level) {
    // Flat weights: the symmetric optimum is uniform.
    std::fill(out.policy.probs.begin(), out.policy.probs.end(), budget / mm);
    shift = hi_level - budget / mm;
    out.state.bracket = {std::exp(kappa_prime * shift), std::exp(kappa_prime * shift)};
  } else if (budget >= mm) {
    std::fill(out.policy.probs.begin(), out.policy.probs.end(), 1.0);
    shift = lo_level - 1.0;
    out.state.bracket = {std::exp(kappa_prime * shift), std::exp(kappa_prime * shift)};
  } else if (budget <= 0.0) {
    shift = hi_level;
    out.state.bracket = {std::exp(kappa_prime * shift), std::exp(kappa_prime * shift)};
  } else {
    // zeta_hi = k' max w gives an all-zero policy, zeta_lo = k' min w e^{-k'}
    // an all-one policy; the root lies in between.
    double s_lo = lo_level - 1.0;
    double s_hi = hi_level;
    shift = 0.5 * (s_lo + s_hi);
    int it = 0;
    for (; it < kMaxBisection; ++it) {
      shift = 0.5 * (s_lo + s_hi);
      const double b = budget_at(level, shift);
      if (std::abs(b - budget) < tol) break;
      if (b > budget) {
        s_lo = shift;
      } else {
        s_hi = shift;
      }
    }
    out.state.iterations = it;
    out.state.bracket = {std::exp(kappa_prime * s_lo), std::exp(kappa_prime * s_hi)};
    shift = refine_shift(level, shift, budget);
    for (std::size_t i = 0; i < m; ++i) out.policy.probs[i] = clamp01(level[i] - shift);
  }

  out.state.zeta = std::exp(kappa_prime * shift);
  out.state.nu = std::exp(shift - log_k / kappa_prime);
  if (keep_z) {
    out.state.z.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.state.z[i] = std::exp(log_weights[i] / kappa_prime);
  }
  return out;
}

CachingPolicy optimal_policy(const Popularity& pop, double kappa_prime, double budget) {
  std::vector<double> lw(pop.size);
  for (std::size_t i = 0; i < pop.size; ++i) lw[i] = std::log(pop.pmf[i]);
  return water_fill(lw, kappa_prime, budget).policy;
}

CachingPolicy optimal_policy_for_weights(std::span<const double> weights, double kappa_prime,
                                         double budget) {
  std::vector<double> lw(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw Error(ErrorKind::DomainError, "weights must be positive");
    lw[i] = std::log(weights[i]);
  }
  return water_fill(lw, kappa_prime, budget).policy;
}

CachingPolicy most_popular_policy(std::size_t library_size, double budget) {
  const double mm = static_cast<double>(library_size);
  if (!(budget >= 0.0) || budget > mm) {
    throw Error(ErrorKind::BudgetInfeasible, "budget outside [0, M]");
  }
  CachingPolicy p;
  p.budget = budget;
  p.probs.assign(library_size, 0.0);
  const auto full = static_cast<std::size_t>(std::floor(budget));
  std::fill_n(p.probs.begin(), full, 1.0);
  if (full < library_size) p.probs[full] = budget - static_cast<double>(full);
  return p;
}

CachingPolicy uniform_policy(std::size_t library_size, double budget) {
  const double mm = static_cast<double>(library_size);
  if (!(budget >= 0.0) || budget > mm) {
    throw Error(ErrorKind::BudgetInfeasible, "budget outside [0, M]");
  }
  CachingPolicy p;
  p.budget = budget;
  p.probs.assign(library_size, budget / mm);
  return p;
}

double solve_c1(double rhs, double* residual) {
  if (!(rhs >= 1.0)) {
    std::ostringstream os;
    os << "C1 - ln C1 = " << rhs << " has no root in (0,1]";
    throw Error(ErrorKind::NoRoot, os.str());
  }
  if (std::isinf(rhs) || rhs == 1.0) {
    if (residual) *residual = 0.0;
    return rhs == 1.0 ? 1.0 : 0.0;
  }
  // g(u) = e^u - u - rhs with u = ln C1 is strictly decreasing on (-inf, 0].
  double lo = -rhs - 1.0;
  double hi = 0.0;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double u = 0.5 * (lo + hi);
    if (std::exp(u) - u - rhs > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
  }
  double c = std::exp(0.5 * (lo + hi));
  // Newton polish away from the double root at C1 = 1.
  for (int it = 0; it < 3; ++it) {
    const double slope = 1.0 - 1.0 / c;
    if (std::abs(slope) < 1e-6) break;
    const double next = c - (c - std::log(c) - rhs) / slope;
    if (!(next > 0.0 && next <= 1.0)) break;
    c = next;
  }
  if (residual) *residual = std::abs(c - std::log(c) - rhs);
  return c;
}

RegimeReport regime_breakpoints(const SystemParams& params, const DerivedParams& derived) {
  const double gamma = params.zipf_gamma;
  const double kp = derived.kappa_prime;
  const double s = params.cache_size;
  const double mm = static_cast<double>(params.library_size);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::DomainError, "regime breakpoints need gamma >= 0");
  }
  if (!(kp > 0.0)) throw Error(ErrorKind::DomainError, "kappa' must be positive");

  RegimeReport r;
  r.C2 = s / mm;
  if (gamma == 0.0) {
    r.c1 = 0.0;
    r.c2 = std::numeric_limits<double>::infinity();
    r.m1 = 0.0;
    r.m2 = std::numeric_limits<double>::infinity();
    r.m_star = mm;
    r.C1 = solve_c1(std::numeric_limits<double>::infinity(), &r.C1_residual);
  } else {
    const double x = kp / gamma;
    // c1 = x / (e^x - 1), c2 = c1 e^x = x / (1 - e^{-x}).
    r.c1 = x / std::expm1(x);
    r.c2 = x / -std::expm1(-x);
    r.m1 = r.c1 * s;
    r.m2 = r.c2 * s;
    r.m_star = std::min(s * x, mm);
    r.C1 = solve_c1(x * (1.0 - r.C2) + 1.0, &r.C1_residual);
  }

  if (r.m2 < mm) {
    r.predicted = Regime::I;
  } else if (r.m1 < 1.0) {
    r.predicted = Regime::II;
  } else {
    r.predicted = Regime::III;
  }
  r.regime = r.predicted;
  return r;
}

ObservedBreakpoints observe_breakpoints(const CachingPolicy& policy) {
  ObservedBreakpoints ob;
  for (std::size_t i = 0; i < policy.probs.size(); ++i) {
    if (policy.probs[i] >= 1.0) ++ob.ones;
    if (policy.probs[i] > 0.0) ob.last_nonzero = i + 1;
  }
  if (ob.last_nonzero < policy.probs.size()) {
    ob.regime = Regime::I;
  } else if (ob.ones == 0) {
    ob.regime = Regime::II;
  } else {
    ob.regime = Regime::III;
  }
  return ob;
}

RegimeReport reconcile(RegimeReport report, const CachingPolicy& exact_policy) {
  report.regime = observe_breakpoints(exact_policy).regime;
  return report;
}

}  // namespace edge3c
