#pragma once

// Reference implementations used only by the tests. None of these call into
// the library's solvers; they recompute things the slow, obvious way.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "edge3c/model.hpp"

namespace oracle {

// Values frozen from a 40-digit mpmath evaluation.
namespace frozen {
// Default SystemParams: kappa, rho, kappa'.
inline constexpr double kDefaultKappa = 0.000027841639984158539226;
inline constexpr double kDefaultRho = 2.2222222222222222222;
inline constexpr double kDefaultKappaPrime = 14.540913896738491912;
// lambda=2e-5, P=0.5, alpha=3.5, m=3, B=20e6, Ec=5e9, FU=2e6, FD=5e5, nuU=50, nuD=20, D=0.05.
inline constexpr double kAltKappa = 0.00006034893412685231552;
inline constexpr double kAltRho = 4.4642857142857142857;
inline constexpr double kAltKappaPrime = 51.211413035646625439;
// Default params with the deadline cut to D/2 = 0.05.
inline constexpr double kHalfDeadlineKappaPrime = 5.0005061582755267999;
inline constexpr double kZipfHead_08_1000 = 0.064642033437517894809;
inline constexpr double kH_5_100_12 = 1.710712770189429896;
inline constexpr double kH_1_100_05 = 18.589603824784153422;
inline constexpr double kH_1_100_2 = 1.6349839001848928651;
inline constexpr double kC1AtRhs2 = 0.15859433956303936215;
inline constexpr double kLogFactorial10 = 15.104412573075515295;
inline constexpr double kRhoAtD10 = 0.02002002002002002002;
}  // namespace frozen

inline edge3c::SystemParams alt_params() {
  edge3c::SystemParams p;
  p.lambda_bs = 2e-5;
  p.tx_power = 0.5;
  p.pathloss = 3.5;
  p.nakagami_m = 3.0;
  p.bandwidth = 20e6;
  p.compute_rate = 5e9;
  p.upload_bits = 2e6;
  p.download_bits = 5e5;
  p.compute_scale_up = 50;
  p.compute_scale_down = 20;
  p.latency = 0.05;
  return p;
}

/// sum_{m=a}^{b} m^-g in long double, ascending order.
inline double harmonic(std::size_t a, std::size_t b, double g) {
  long double s = 0.0L;
  for (std::size_t m = a; m <= b; ++m) s += std::pow(static_cast<long double>(m), -static_cast<long double>(g));
  return static_cast<double>(s);
}

inline double log_sum(std::size_t a, std::size_t b) {
  long double s = 0.0L;
  for (std::size_t m = a; m <= b; ++m) s += std::log(static_cast<long double>(m));
  return static_cast<double>(s);
}

/// Zipf pmf by brute force.
inline std::vector<double> zipf_pmf(std::size_t M, double g) {
  std::vector<long double> w(M);
  long double total = 0.0L;
  for (std::size_t f = 1; f <= M; ++f) {
    w[f - 1] = std::pow(static_cast<long double>(f), -static_cast<long double>(g));
    total += w[f - 1];
  }
  std::vector<double> pmf(M);
  for (std::size_t i = 0; i < M; ++i) pmf[i] = static_cast<double>(w[i] / total);
  return pmf;
}

inline double outage(const std::vector<double>& w, const std::vector<double>& p, double k) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::exp(-k * static_cast<long double>(p[i]));
  return static_cast<double>(s);
}

/// argmin_x sum_i h_i (x_i - y_i)^2 / 2 over {0 <= x <= 1, sum x = S}.
/// x_i(t) = clamp(y_i - t / h_i, 0, 1) is piecewise linear and non-increasing
/// in t, so the crossing is found exactly by walking the sorted breakpoints.
inline std::vector<double> project_capped_simplex(const std::vector<double>& y,
                                                  const std::vector<double>& h, double S) {
  const std::size_t n = y.size();
  auto at = [&](double t) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(y[i] - t / h[i], 0.0, 1.0);
    return x;
  };
  auto total = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::clamp(y[i] - t / h[i], 0.0, 1.0);
    return s;
  };
  std::vector<double> knots;
  knots.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    knots.push_back(h[i] * (y[i] - 1.0));
    knots.push_back(h[i] * y[i]);
  }
  std::sort(knots.begin(), knots.end());
  // total(knots.front()) == n >= S and total(knots.back()) == 0 <= S.
  std::size_t lo = 0;
  std::size_t hi = knots.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (total(knots[mid]) >= S) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t0 = knots[lo];
  const double t1 = knots[hi];
  const double s0 = total(t0);
  const double s1 = total(t1);
  const double t = s0 == s1 ? t0 : t0 + (s0 - S) * (t1 - t0) / (s0 - s1);
  return at(t);
}

/// Minimizes sum_i w_i exp(-k x_i) over the capped simplex by projected
/// gradient steps measured in the diagonal Hessian metric (a projected Newton
/// method for this separable objective), with Armijo backtracking.
inline std::vector<double> projected_gradient_policy(const std::vector<double>& w, double k, double S,
                                                     int max_iter = 2000) {
  const std::size_t n = w.size();
  std::vector<double> x(n, S / static_cast<double>(n));
  auto f = [&](const std::vector<double>& v) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::exp(-k * static_cast<long double>(v[i]));
    return s;
  };
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = w[i] * std::exp(-k * x[i]);
      g[i] = -k * e;
      h[i] = std::max(k * k * e, 1e-300);
    }
    const long double fx = f(x);
    double step = 1.0;
    std::vector<double> next;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - step * g[i] / h[i];
      next = project_capped_simplex(y, h, S);
      long double decrease = 0.0L;
      for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (next[i] - x[i]);
      if (f(next) <= fx + 1e-4L * decrease) break;
      step *= 0.5;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(next[i] - x[i]));
    x = std::move(next);
    if (change < 1e-15) break;
  }
  return x;
}

/// Joint problem min sum_f w_f exp(-k p_f - kb q_f), each block on its own
/// capped simplex. Plain Euclidean projected gradient with Barzilai-Borwein
/// steps and a non-monotone Armijo safeguard.
struct JointResult {
  std::vector<double> p, q;
  double objective = 0.0;
};

inline JointResult projected_gradient_joint(const std::vector<double>& w, double k, double S,
                                            double kb, double SB, int max_iter = 200000) {
  const std::size_t n = w.size();
  const std::vector<double> ones(n, 1.0);
  std::vector<double> x(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = S / static_cast<double>(n);
    x[n + i] = SB / static_cast<double>(n);
  }
  auto f = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::exp(-k * v[i] - kb * v[n + i]);
    return s;
  };
  auto grad = [&](const std::vector<double>& v) {
    std::vector<double> g(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = w[i] * std::exp(-k * v[i] - kb * v[n + i]);
      g[i] = -k * e;
      g[n + i] = -kb * e;
    }
    return g;
  };
  auto project = [&](const std::vector<double>& y) {
    std::vector<double> a(y.begin(), y.begin() + static_cast<long>(n));
    std::vector<double> b(y.begin() + static_cast<long>(n), y.end());
    a = project_capped_simplex(a, ones, S);
    b = project_capped_simplex(b, ones, SB);
    std::vector<double> out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
  };

  std::vector<double> g = grad(x);
  double step = 1.0;
  std::vector<double> history(10, f(x));
  for (int it = 0; it < max_iter; ++it) {
    const double ref = *std::max_element(history.begin(), history.end());
    std::vector<double> next;
    double t = step;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<double> y(2 * n);
      for (std::size_t i = 0; i < 2 * n; ++i) y[i] = x[i] - t * g[i];
      next = project(y);
      double dec = 0.0;
      for (std::size_t i = 0; i < 2 * n; ++i) dec += g[i] * (next[i] - x[i]);
      if (f(next) <= ref + 1e-4 * dec) break;
      t *= 0.5;
    }
    const std::vector<double> g_next = grad(next);
    double ss = 0.0, sy = 0.0, move = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      const double s = next[i] - x[i];
      ss += s * s;
      sy += s * (g_next[i] - g[i]);
      move = std::max(move, std::abs(s));
    }
    x = std::move(next);
    g = g_next;
    history[static_cast<std::size_t>(it) % history.size()] = f(x);
    if (move < 1e-14) break;
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : 1.0;
  }
  JointResult r;
  r.p.assign(x.begin(), x.begin() + static_cast<long>(n));
  r.q.assign(x.begin() + static_cast<long>(n), x.end());
  r.objective = f(x);
  return r;
}

/// Adaptive Simpson on [a, b].
inline double integrate(const std::function<double(double)>& fn, double a, double b, double tol,
                        int depth = 50) {
  struct Rec {
    const std::function<double(double)>& fn;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = fn(lm);
      const double frm = fn(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{fn};
  const double fa = fn(a);
  const double fb = fn(b);
  const double fm = fn(0.5 * (a + b));
  return rec.run(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Sets lambda so that derive(p).kappa_prime equals target (kappa' is
/// proportional to lambda).
inline edge3c::SystemParams with_kappa_prime(edge3c::SystemParams p, double target) {
  const double now = edge3c::derive(p).kappa_prime;
  p.lambda_bs *= target / now;
  return p;
}

/// Default params with M, S = ratio M, gamma and kappa' set directly.
inline edge3c::SystemParams params_at(std::size_t M, double ratio, double gamma, double kp) {
  edge3c::SystemParams p;
  p.library_size = M;
  p.cache_size = ratio * static_cast<double>(M);
  p.zipf_gamma = gamma;
  return with_kappa_prime(p, kp);
}

}  // namespace oracle
