#include "edge3c/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "edge3c/error.hpp"

namespace edge3c {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Everything one trial needs, fixed for the whole run.
struct Field {
  double mean_count = 0.0;  // lambda p pi R^2
  double radius_sq = 0.0;
  double half_alpha = 0.0;
  double snr_needed = 0.0;  // (2^rho - 1) / eta
  double m = 1.0;
};

Field make_field(const SystemParams& params, const DerivedParams& d, double p, double radius) {
  Field fld;
  fld.radius_sq = radius * radius;
  fld.mean_count = params.lambda_bs * p * std::numbers::pi * fld.radius_sq;
  fld.half_alpha = params.pathloss / 2.0;
  fld.snr_needed = d.threshold / d.snr;
  fld.m = params.nakagami_m;
  return fld;
}

// Draws the thinned field around the origin and counts BSs whose received
// SNR clears the threshold. With stop_at_first the count is 0 or 1.
std::uint32_t run_trial(const Field& fld, std::mt19937_64& eng, bool stop_at_first) {
  if (fld.mean_count <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> count(fld.mean_count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::gamma_distribution<double> fading(fld.m, 1.0 / fld.m);
  const std::uint64_t n = count(eng);
  std::uint32_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r_sq = fld.radius_sq * unit(eng);
    const double h = fading(eng);
    // eta h r^-alpha >= T  <=>  h >= (T/eta) (r^2)^{alpha/2}
    if (h >= fld.snr_needed * std::pow(r_sq, fld.half_alpha)) {
      ++hits;
      if (stop_at_first) break;
    }
  }
  return hits;
}

// Runs body(trial) for trial in [0, trials) on up to `threads` workers and
// sums the returned counts. Each trial owns its generator, so the sum does
// not depend on the partition.
template <class Body>
std::uint64_t parallel_count(std::uint64_t trials, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(
                                                         trials, 1024))));
  if (threads == 1) {
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) total += body(t);
    return total;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t begin = trials * w / threads;
        const std::uint64_t end = trials * (w + 1) / threads;
        std::uint64_t local = 0;
        for (std::uint64_t t = begin; t < end; ++t) local += body(t);
        partial[w] = local;
      });
    }
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

OutageEstimate make_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed) {
  OutageEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  e.std_error = trials ? std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials)) : 0.0;
  return e;
}

double resolve_radius(const SystemParams& params, double p_max, const TrialConfig& cfg) {
  const double r = cfg.radius > 0.0 ? cfg.radius
                                    : (p_max > 0.0 ? truncation_radius(params, p_max,
                                                                       cfg.truncation_eps)
                                                   : 0.0);
  if (r > cfg.radius_cap) {
    std::ostringstream os;
    os << "simulation radius " << r << " exceeds the cap " << cfg.radius_cap;
    throw Error(ErrorKind::TruncationError, os.str());
  }
  return r;
}

void check_config(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorKind::DomainError, "need at least one trial");
  if (!(cfg.truncation_eps > 0.0)) throw Error(ErrorKind::DomainError, "truncation eps must be > 0");
  if (cfg.radius < 0.0) throw Error(ErrorKind::DomainError, "radius must be non-negative");
}

double max_prob(const std::vector<double>& probs) {
  return probs.empty() ? 0.0 : *std::max_element(probs.begin(), probs.end());
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

double expected_tail_count(const SystemParams& params, double p, double radius) {
  const DerivedParams d = derive(params);
  if (radius <= 0.0) return p * d.kappa_prime;
  const double m = params.nakagami_m;
  const double t = (d.threshold / d.snr) * std::pow(radius, params.pathloss);
  const double far = p * d.kappa_prime * boost::math::gamma_q(m + d.delta, m * t);
  const double near = p * params.lambda_bs * std::numbers::pi * radius * radius *
                      boost::math::gamma_q(m, m * t);
  return std::max(0.0, far - near);
}

double truncation_radius(const SystemParams& params, double p_max, double eps) {
  if (!(p_max > 0.0 && p_max <= 1.0)) throw Error(ErrorKind::DomainError, "p_max must be in (0,1]");
  if (!(eps > 0.0)) throw Error(ErrorKind::DomainError, "eps must be positive");
  if (expected_tail_count(params, p_max, 0.0) < eps) return 0.0;

  const DerivedParams d = derive(params);
  // Distance at which a unit-gain link just clears the threshold.
  double hi = std::pow(d.snr / d.threshold, 1.0 / params.pathloss);
  while (expected_tail_count(params, p_max, hi) >= eps) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error(ErrorKind::TruncationError, "radius search diverged");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (expected_tail_count(params, p_max, mid) < eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

OutageEstimate simulate_task_success(std::size_t f, const CachingPolicy& policy,
                                     const SystemParams& params, const TrialConfig& cfg) {
  check_config(cfg);
  const DerivedParams d = derive(params);
  if (f < 1 || f > policy.size()) throw Error(ErrorKind::DomainError, "task index out of range");
  const double p = policy(f);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainError, "caching probability outside [0,1]");
  if (p == 0.0) return make_estimate(0, cfg.trials, cfg.seed);

  const Field fld = make_field(params, d, p, resolve_radius(params, max_prob(policy.probs), cfg));
  const std::uint64_t hits = parallel_count(cfg.trials, cfg.threads, [&](std::uint64_t t) {
    std::mt19937_64 eng(trial_seed(cfg.seed, t));
    return std::uint64_t{run_trial(fld, eng, true)};
  });
  return make_estimate(hits, cfg.trials, cfg.seed);
}

OutageEstimate simulate_outage(const CachingPolicy& policy, const Popularity& pop,
                               const SystemParams& params, const TrialConfig& cfg) {
  check_config(cfg);
  const DerivedParams d = derive(params);
  if (policy.size() != pop.size) throw Error(ErrorKind::DomainError, "policy and popularity sizes differ");
  const double radius = resolve_radius(params, max_prob(policy.probs), cfg);

  std::vector<Field> fields;
  fields.reserve(pop.size);
  for (double p : policy.probs) fields.push_back(make_field(params, d, p, radius));

  std::uint64_t failures = 0;
  if (cfg.stratified) {
    // Largest-remainder allocation of trials proportional to P_r(f).
    const double total = static_cast<double>(cfg.trials);
    std::vector<std::uint64_t> alloc(pop.size);
    std::vector<std::pair<double, std::size_t>> rem(pop.size);
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < pop.size; ++i) {
      const double share = pop.pmf[i] * total;
      alloc[i] = static_cast<std::uint64_t>(std::floor(share));
      used += alloc[i];
      rem[i] = {share - std::floor(share), i};
    }
    std::stable_sort(rem.begin(), rem.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; used < cfg.trials && k < rem.size(); ++k, ++used) ++alloc[rem[k].second];

    std::vector<std::uint64_t> first(pop.size + 1, 0);
    for (std::size_t i = 0; i < pop.size; ++i) first[i + 1] = first[i] + alloc[i];
    failures = parallel_count(cfg.trials, cfg.threads, [&](std::uint64_t t) {
      const auto task = static_cast<std::size_t>(
          std::upper_bound(first.begin(), first.end(), t) - first.begin() - 1);
      std::mt19937_64 eng(trial_seed(cfg.seed, t));
      return std::uint64_t{run_trial(fields[task], eng, true) == 0};
    });
  } else {
    std::vector<double> cumulative(pop.size);
    std::partial_sum(pop.pmf.begin(), pop.pmf.end(), cumulative.begin());
    failures = parallel_count(cfg.trials, cfg.threads, [&](std::uint64_t t) {
      std::mt19937_64 eng(trial_seed(cfg.seed, t));
      const double u = std::uniform_real_distribution<double>(0.0, cumulative.back())(eng);
      const auto task = std::min<std::size_t>(
          static_cast<std::size_t>(
              std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()),
          pop.size - 1);
      return std::uint64_t{run_trial(fields[task], eng, true) == 0};
    });
  }
  return make_estimate(failures, cfg.trials, cfg.seed);
}

std::vector<std::uint32_t> qualified_counts(std::size_t f, const CachingPolicy& policy,
                                            const SystemParams& params, const TrialConfig& cfg) {
  check_config(cfg);
  const DerivedParams d = derive(params);
  if (f < 1 || f > policy.size()) throw Error(ErrorKind::DomainError, "task index out of range");
  const double p = policy(f);
  const Field fld =
      make_field(params, d, p, p > 0.0 ? resolve_radius(params, max_prob(policy.probs), cfg) : 0.0);
  std::vector<std::uint32_t> counts(cfg.trials);
  parallel_count(cfg.trials, cfg.threads, [&](std::uint64_t t) {
    std::mt19937_64 eng(trial_seed(cfg.seed, t));
    counts[t] = run_trial(fld, eng, false);
    return std::uint64_t{0};
  });
  return counts;
}

}  // namespace edge3c
