#include "edge3c/bounds.hpp"

#include <cmath>
#include <sstream>

#include "edge3c/error.hpp"

namespace edge3c {
namespace {

double x_log_x(double x) { return x * std::log(x); }

void require_gamma(double gamma) {
  if (gamma == 1.0 || !std::isfinite(gamma)) {
    throw Error(ErrorKind::DomainError, "bound needs gamma != 1");
  }
}

}  // namespace

BoundPair lemma1_logsum_bounds(std::size_t a, std::size_t b) {
  if (!(a > 0 && a < b)) throw Error(ErrorKind::DomainError, "log-sum bound needs 0 < a < b");
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  BoundPair p;
  p.upper = x_log_x(bd + 1.0) - (bd + 1.0) - x_log_x(ad) + ad;
  p.lower = std::log(ad) + x_log_x(bd) - bd - x_log_x(ad) + ad;
  return p;
}

BoundPair lemma2_harmonic_bounds(std::size_t a, std::size_t b, double gamma) {
  require_gamma(gamma);
  if (!(a >= 1 && a <= b)) throw Error(ErrorKind::DomainError, "harmonic bound needs 1 <= a <= b");
  const double e = 1.0 - gamma;
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  BoundPair p;
  p.lower = (std::pow(bd + 1.0, e) - std::pow(ad, e)) / e;
  p.upper = (std::pow(bd, e) - std::pow(ad, e)) / e + std::pow(ad, -gamma);
  return p;
}

BoundPair lemma3_zipf_mass_bounds(std::size_t a, std::size_t b, std::size_t library_size,
                                  double gamma) {
  require_gamma(gamma);
  if (!(a >= 1 && a <= b && b <= library_size)) {
    throw Error(ErrorKind::DomainError, "mass bound needs 1 <= a <= b <= M");
  }
  const double e = 1.0 - gamma;
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  const double md = static_cast<double>(library_size);
  BoundPair p;
  p.lower = (std::pow(bd + 1.0, e) - std::pow(ad, e)) / (std::pow(md, e) - gamma);
  p.upper = (std::pow(bd, e) - std::pow(ad, e) + e * std::pow(ad, -gamma)) /
            (std::pow(md + 1.0, e) - 1.0);
  if (!(p.lower <= p.upper)) {
    std::ostringstream os;
    os << "mass bounds inverted for a=" << a << " b=" << b << " M=" << library_size
       << " gamma=" << gamma;
    throw Error(ErrorKind::DomainError, os.str());
  }
  return p;
}

}  // namespace edge3c
