#pragma once

// Integral-comparison bounds on log sums, generalized harmonic sums and Zipf
// probability mass. Used as test oracles and as standalone checks.

#include <cstddef>

namespace edge3c {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Bounds on sum_{f=a}^{b} ln f. Requires 0 < a < b.
BoundPair lemma1_logsum_bounds(std::size_t a, std::size_t b);

/// Bounds on H(a, b, gamma). Requires 1 <= a <= b and gamma != 1.
BoundPair lemma2_harmonic_bounds(std::size_t a, std::size_t b, double gamma);

/// Bounds on sum_{f=a}^{b} P_r(f) for Zipf(M, gamma), with the denominators
/// M^{1-gamma} - gamma and (M+1)^{1-gamma} - 1. Requires 1 <= a <= b <= M and
/// gamma != 1. Throws DomainError if the pair ever comes out inverted.
BoundPair lemma3_zipf_mass_bounds(std::size_t a, std::size_t b, std::size_t library_size,
                                  double gamma);

}  // namespace edge3c
