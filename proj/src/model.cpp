#include "edge3c/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "edge3c/error.hpp"

namespace edge3c {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DomainError, what);
}

bool finite_all(const SystemParams& p) {
  for (double v : {p.lambda_bs, p.tx_power, p.noise_power, p.pathloss, p.nakagami_m,
                   p.bandwidth, p.compute_rate, p.upload_bits, p.download_bits,
                   p.compute_scale_up, p.compute_scale_down, p.latency, p.cache_size,
                   p.zipf_gamma}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

double compute_delay(const SystemParams& params) {
  return (params.compute_scale_up * params.upload_bits +
          params.compute_scale_down * params.download_bits) /
         params.compute_rate;
}

SystemParams validate_params(const SystemParams& raw) {
  require(finite_all(raw), "all parameters must be finite");
  require(raw.lambda_bs > 0.0, "BS density must be positive");
  require(raw.tx_power > 0.0, "transmit power must be positive");
  require(raw.noise_power > 0.0, "noise power must be positive");
  require(raw.pathloss > 2.0, "pathloss exponent must exceed 2");
  require(raw.nakagami_m >= 0.5, "Nakagami m must be at least 1/2");
  require(raw.bandwidth > 0.0, "bandwidth must be positive");
  require(raw.compute_rate > 0.0, "compute rate must be positive");
  require(raw.upload_bits >= 0.0 && raw.download_bits >= 0.0, "task sizes must be non-negative");
  require(raw.upload_bits + raw.download_bits > 0.0, "task must move at least one bit");
  require(raw.compute_scale_up >= 0.0 && raw.compute_scale_down >= 0.0,
          "compute scaling must be non-negative");
  require(raw.latency > 0.0, "latency requirement must be positive");
  require(raw.library_size >= 1, "library must hold at least one dataset");
  require(raw.cache_size >= 0.0, "cache size must be non-negative");
  require(raw.cache_size <= static_cast<double>(raw.library_size),
          "cache size cannot exceed the library size");
  require(raw.zipf_gamma >= 0.0, "Zipf exponent must be non-negative");

  const double cd = compute_delay(raw);
  if (!(raw.latency - cd > 0.0)) {
    std::ostringstream os;
    os << "latency " << raw.latency << " s does not exceed compute delay " << cd << " s";
    throw Error(ErrorKind::InfeasibleLatency, os.str());
  }
  return raw;
}

void require_asymptotic_gamma(double gamma) {
  if (!std::isfinite(gamma) || gamma == 1.0) {
    throw Error(ErrorKind::DomainError, "asymptotic results require gamma != 1");
  }
}

double kappa_constant(double lambda_bs, double delta, double nakagami_m) {
  // Direct ratio is exact to a few ulp while Gamma(m) stays finite.
  double ratio;
  if (nakagami_m < 150.0) {
    ratio = std::tgamma(delta + nakagami_m) / std::tgamma(nakagami_m);
  } else {
    ratio = 1.0 / boost::math::tgamma_delta_ratio(nakagami_m, delta);
  }
  return std::numbers::pi * lambda_bs * ratio / std::pow(nakagami_m, delta);
}

double kappa_prime_for_deadline(const SystemParams& params, double deadline) {
  const double slack = deadline - compute_delay(params);
  if (!(slack > 0.0)) {
    std::ostringstream os;
    os << "deadline " << deadline << " s leaves no time for transmission";
    throw Error(ErrorKind::InfeasibleLatency, os.str());
  }
  const double delta = 2.0 / params.pathloss;
  const double rate = (params.upload_bits + params.download_bits) / (params.bandwidth * slack);
  const double threshold = std::expm1(rate * std::numbers::ln2);
  const double snr = params.tx_power / params.noise_power;
  return kappa_constant(params.lambda_bs, delta, params.nakagami_m) *
         std::pow(snr / threshold, delta);
}

DerivedParams derive(const SystemParams& params) {
  validate_params(params);
  DerivedParams d;
  d.delta = 2.0 / params.pathloss;
  d.snr = params.tx_power / params.noise_power;
  d.kappa = kappa_constant(params.lambda_bs, d.delta, params.nakagami_m);
  d.required_rate = (params.upload_bits + params.download_bits) /
                    (params.bandwidth * (params.latency - compute_delay(params)));
  d.threshold = std::expm1(d.required_rate * std::numbers::ln2);
  d.kappa_prime = d.kappa * std::pow(d.snr / d.threshold, d.delta);
  d.kappa_T = params.cache_size * d.kappa_prime / static_cast<double>(params.library_size);
  d.asymptotic_valid = params.zipf_gamma != 1.0;
  return d;
}

double partial_sum(std::size_t a, std::size_t b, double gamma) {
  if (a < 1 || a > b) throw Error(ErrorKind::DomainError, "partial_sum needs 1 <= a <= b");
  // Smallest terms first.
  if (b - a <= 1'000'000) {
    double sum = 0.0;
    for (std::size_t m = b; m >= a; --m) {
      sum += std::pow(static_cast<double>(m), -gamma);
      if (m == a) break;
    }
    return sum;
  }
  // Neumaier compensated summation.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t m = b; m >= a; --m) {
    const double term = std::pow(static_cast<double>(m), -gamma);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
    if (m == a) break;
  }
  return sum + carry;
}

Popularity zipf(std::size_t library_size, double gamma) {
  if (library_size < 1) throw Error(ErrorKind::DomainError, "zipf needs M >= 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::DomainError, "zipf needs a finite gamma >= 0");
  }
  Popularity pop;
  pop.size = library_size;
  pop.gamma = gamma;
  pop.norm = partial_sum(1, library_size, gamma);
  pop.pmf.resize(library_size);
  for (std::size_t f = 1; f <= library_size; ++f) {
    pop.pmf[f - 1] = std::pow(static_cast<double>(f), -gamma) / pop.norm;
  }
  return pop;
}

void check_policy(const CachingPolicy& policy, double tol) {
  double sum = 0.0;
  for (double p : policy.probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::DomainError, "caching probability outside [0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - policy.budget) > tol * std::max(1.0, policy.budget)) {
    std::ostringstream os;
    os << "policy sums to " << sum << " but the budget is " << policy.budget;
    throw Error(ErrorKind::DomainError, os.str());
  }
}

}  // namespace edge3c
