// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails. Pass AC<n> to run a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "edge3c/analytics.hpp"
#include "edge3c/bounds.hpp"
#include "edge3c/policy.hpp"
#include "edge3c/simulator.hpp"
#include "edge3c/variants.hpp"
#include "oracles.hpp"

using namespace edge3c;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double exact_optimal(const SystemParams& p, const DerivedParams& d, const Popularity& pop) {
  return outage(optimal_policy(pop, d.kappa_prime, p.cache_size), pop, d.kappa_prime);
}

Outcome ac1() {
  Timer t;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_entry = 0.0;
  double worst_gap = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    const std::size_t M = 1 + static_cast<std::size_t>(20 * u(rng)) % 20;
    const double g = 2.0 * u(rng);
    const double kp = 0.5 + 49.5 * u(rng);
    const double S = u(rng) * static_cast<double>(M);
    const Popularity pop = zipf(M, g);
    const CachingPolicy p = optimal_policy(pop, kp, S);
    const std::vector<double> ref = oracle::projected_gradient_policy(oracle::zipf_pmf(M, g), kp, S);
    for (std::size_t f = 0; f < M; ++f) worst_entry = std::max(worst_entry, std::abs(p.probs[f] - ref[f]));
    worst_gap = std::max(worst_gap, oracle::outage(pop.pmf, p.probs, kp) - oracle::outage(pop.pmf, ref, kp));
  }
  const double secs = t.seconds();
  Outcome o;
  o.pass = worst_entry < 1e-6 && worst_gap <= 1e-9 && secs < 10.0;
  o.detail = "200 instances, max |p - oracle| = " + fmt("%.2e", worst_entry) +
             ", max objective excess = " + fmt("%.2e", worst_gap) + ", " + fmt("%.2f", secs) + " s";
  return o;
}

Outcome ac2() {
  Timer t;
  Outcome o;
  double worst = 0.0;
  int points = 0;
  for (double m : {0.5, 1.0, 3.0}) {
    for (double alpha : {3.0, 4.0}) {
      SystemParams p;
      p.nakagami_m = m;
      p.pathloss = alpha;
      p = oracle::with_kappa_prime(p, 2.0);
      const double kp = derive(p).kappa_prime;
      for (double prob : {0.2, 1.0}) {
        TrialConfig cfg;
        cfg.trials = 100000;
        cfg.seed = 7000 + static_cast<std::uint64_t>(points);
        const OutageEstimate e = simulate_task_success(1, CachingPolicy{{prob}, prob}, p, cfg);
        const double z = std::abs(e.mean - (-std::expm1(-kp * prob))) / e.std_error;
        worst = std::max(worst, z);
        if (!(z < 4.0)) o.pass = false;
        ++points;
      }
    }
  }
  const double secs = t.seconds();
  o.pass = o.pass && secs < 60.0;
  o.detail = std::to_string(points) + " grid points at 1e5 trials, worst |z| = " + fmt("%.2f", worst) +
             ", " + fmt("%.1f", secs) + " s";
  return o;
}

Outcome ac3() {
  struct Case {
    const char* name;
    double ratio, kp;
    Regime regime;
  };
  const Case cases[] = {{"regime I", 0.05, 3.0, Regime::I},
                        {"regime II", 0.1, 40.0, Regime::II},
                        {"regime III", 0.3, 6.0, Regime::III}};
  Outcome o;
  std::ostringstream os;
  for (const Case& c : cases) {
    std::vector<double> gaps, cor_gaps;
    bool regime_ok = true;
    for (std::size_t M : {10'000u, 100'000u, 1'000'000u}) {
      const SystemParams p = oracle::params_at(M, c.ratio, 0.6, c.kp);
      const DerivedParams d = derive(p);
      const RegimeReport r = regime_breakpoints(p, d);
      const Popularity pop = zipf(M, 0.6);
      const double exact = exact_optimal(p, d, pop);
      const AsymptoticOutage a = asymptotic_outage_lt1(p, d, r);
      regime_ok = regime_ok && r.regime == c.regime;
      gaps.push_back(std::abs(exact / a.value - 1));
      if (c.regime == Regime::III) cor_gaps.push_back(std::abs(exact / a.corollary - 1));
    }
    auto converging = [](const std::vector<double>& g) {
      return g[1] < g[0] && g[2] < g[1] && g[2] < 0.05;
    };
    bool ok = regime_ok && converging(gaps);
    os << c.name << " |ratio-1| " << fmt("%.4f", gaps[0]) << " > " << fmt("%.4f", gaps[1]) << " > "
       << fmt("%.4f", gaps[2]);
    if (!cor_gaps.empty()) {
      ok = ok && converging(cor_gaps);
      os << " (corollary " << fmt("%.4f", cor_gaps[2]) << ")";
    }
    if (!regime_ok) os << " [regime mismatch]";
    os << "; ";
    o.pass = o.pass && ok;
  }
  o.detail = os.str();
  return o;
}

Outcome ac4() {
  struct Case {
    double gamma, ratio, kp;
    Source source;
  };
  const Case cases[] = {
      {1.2, 0.001, 30.0, Source::Theorem7}, {1.5, 0.001, 30.0, Source::Theorem7},
      {2.0, 0.001, 30.0, Source::Theorem7}, {1.2, 0.01, 3.0, Source::Theorem8},
      {1.5, 0.01, 3.0, Source::Theorem8},   {2.0, 0.01, 3.0, Source::Theorem8},
      {1.2, 0.5, 60.0, Source::Theorem9},   {1.5, 0.5, 60.0, Source::Theorem9},
      {2.0, 0.5, 60.0, Source::Theorem9},   {1.2, 0.2, 10.0, Source::Theorem10},
      {1.5, 0.2, 10.0, Source::Theorem10},  {2.0, 0.1, 20.0, Source::Theorem10},
  };
  const std::size_t M = 1'000'000;
  Outcome o;
  int checks = 0;
  std::ostringstream misses;
  for (const Case& c : cases) {
    const SystemParams p = oracle::params_at(M, c.ratio, c.gamma, c.kp);
    const DerivedParams d = derive(p);
    const Popularity pop = zipf(M, c.gamma);
    const double exact = exact_optimal(p, d, pop);
    const AsymptoticBounds b = asymptotic_outage_gt1(p, d, regime_breakpoints(p, d));
    auto check = [&](const OutageBounds& pair) {
      ++checks;
      if (!pair.contains(exact)) {
        o.pass = false;
        misses << " " << to_string(pair.source) << "@gamma=" << c.gamma << " exact=" << exact << " not in ["
               << pair.raw_lower << ", " << pair.raw_upper << "]";
      }
    };
    if (b.bounds.source != c.source) {
      o.pass = false;
      misses << " expected " << to_string(c.source) << " got " << to_string(b.bounds.source);
    }
    check(b.bounds);
    if (c.source == Source::Theorem10) {
      if (!b.corollary || !b.corollary_large_kappa) {
        o.pass = false;
        misses << " corollary pair missing";
      } else {
        check(*b.corollary);
        check(*b.corollary_large_kappa);
      }
    }
  }
  o.detail = std::to_string(checks) + " bound pairs at M = 1e6" + (o.pass ? ", all contain the exact outage" : ":" + misses.str());
  return o;
}

Outcome ac5() {
  const std::size_t M = 100'000;
  Outcome o;
  std::ostringstream os;
  struct PointCase {
    double gamma, ratio, kp;
  };
  for (const PointCase& c : {PointCase{0.7, 0.2, 10.0}, PointCase{0.5, 0.1, 5.0}, PointCase{0.3, 0.3, 3.0}}) {
    const SystemParams p = oracle::params_at(M, c.ratio, c.gamma, c.kp);
    const DerivedParams d = derive(p);
    const Popularity pop = zipf(M, c.gamma);
    const double top = reference_outage(ReferenceKind::MostPopular, p, d).lower;
    const double top_exact = outage(most_popular_policy(M, p.cache_size), pop, d.kappa_prime);
    const double uni = reference_outage(ReferenceKind::Uniform, p, d).lower;
    const double uni_exact = outage(uniform_policy(M, p.cache_size), pop, d.kappa_prime);
    const double e_top = std::abs(top / top_exact - 1);
    const double e_uni = std::abs(uni / uni_exact - 1);
    const bool ok = e_top < 0.01 && e_uni < 0.01;
    o.pass = o.pass && ok;
    os << "gamma=" << c.gamma << " S/M=" << c.ratio << " k'=" << c.kp << ": most-popular rel.err "
       << fmt("%.4f", e_top) << ", uniform " << fmt("%.1e", e_uni) << (ok ? "" : " [over 1%]") << "; ";
  }
  int contained = 0, total = 0;
  for (const PointCase& c : {PointCase{1.2, 0.01, 3.0}, PointCase{1.5, 0.001, 5.0}, PointCase{2.0, 0.01, 10.0},
                             PointCase{1.5, 0.2, 4.0}, PointCase{2.0, 0.0001, 2.0}, PointCase{1.2, 0.5, 1.0}}) {
    const SystemParams p = oracle::params_at(M, c.ratio, c.gamma, c.kp);
    const DerivedParams d = derive(p);
    const Popularity pop = zipf(M, c.gamma);
    const OutageBounds b = reference_outage(ReferenceKind::MostPopular, p, d);
    const double exact = outage(most_popular_policy(M, p.cache_size), pop, d.kappa_prime);
    const double uni = reference_outage(ReferenceKind::Uniform, p, d).lower;
    const double uni_exact = outage(uniform_policy(M, p.cache_size), pop, d.kappa_prime);
    ++total;
    if (b.contains(exact) && std::abs(uni / uni_exact - 1) < 0.01) ++contained;
  }
  o.pass = o.pass && contained == total;
  os << "gamma>1 pairs contain the exact value in " << contained << "/" << total;
  o.detail = os.str();
  return o;
}

Outcome ac6() {
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<std::size_t> start(1, 2000);
  std::uniform_int_distribution<std::size_t> len(0, 5000);
  std::uniform_real_distribution<double> lt1(0.0, 0.999), gt1(1.001, 4.0);
  int v1 = 0, v2 = 0, v3 = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t a = start(rng);
    const std::size_t b = a + 1 + len(rng);
    if (!lemma1_logsum_bounds(a, b).contains(oracle::log_sum(a, b))) ++v1;
  }
  for (int i = 0; i < 1000; ++i) {
    for (double g : {lt1(rng), gt1(rng)}) {
      const std::size_t a = start(rng);
      const std::size_t b = a + len(rng);
      if (!lemma2_harmonic_bounds(a, b, g).contains(oracle::harmonic(a, b, g))) ++v2;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    for (double g : {lt1(rng), gt1(rng)}) {
      const std::size_t a = start(rng);
      const std::size_t b = a + len(rng);
      const std::size_t M = b + len(rng);
      const double mass = oracle::harmonic(a, b, g) / oracle::harmonic(1, M, g);
      try {
        if (!lemma3_zipf_mass_bounds(a, b, M, g).contains(mass)) ++v3;
      } catch (const std::exception&) {
        ++v3;
      }
    }
  }
  Outcome o;
  o.pass = v1 == 0 && v2 == 0 && v3 == 0;
  o.detail = "violations: log-sum " + std::to_string(v1) + "/1000, harmonic " + std::to_string(v2) +
             "/2000, Zipf mass " + std::to_string(v3) + "/2000";
  return o;
}

Outcome ac7() {
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0, attempts = 0;
  double worst = 0.0;
  while (done < 50 && attempts < 10000) {
    ++attempts;
    SystemParams p;
    p.library_size = 10'000;
    p.zipf_gamma = 0.1 + 0.8 * u(rng);
    p.cache_size = (0.05 + 0.25 * u(rng)) * 10'000;
    p.lambda_bs = 1e-6 * (1 + 30 * u(rng));
    p.pathloss = 2.5 + 2.5 * u(rng);
    p.nakagami_m = 0.5 + 3 * u(rng);
    const double ceiling = (1 - p.zipf_gamma) * std::exp(p.zipf_gamma);
    const double kappa_T = std::max(1.0, p.zipf_gamma) * 1.2 + 5 * u(rng);
    const double target = ceiling * std::exp(-kappa_T);
    try {
      const DelayPoint dp = min_latency(p, derive(p), target);
      SystemParams q = p;
      q.latency = dp.d_star;
      const DerivedParams dq = derive(q);
      const RegimeReport r = regime_breakpoints(q, dq);
      if (r.regime != Regime::II) continue;
      const double back = asymptotic_outage_lt1(q, dq, r).value;
      worst = std::max(worst, std::abs(back / target - 1));
      ++done;
    } catch (const std::exception&) {
      continue;
    }
  }
  Outcome o;
  o.pass = done == 50 && worst < 1e-6;
  o.detail = std::to_string(done) + " regime II sets (" + std::to_string(attempts) +
             " draws), worst relative error " + fmt("%.2e", worst);
  return o;
}

Outcome ac8() {
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int above_uniform = 0;
  const int instances = 40;
  for (int i = 0; i < instances; ++i) {
    const double g = 1.5 * u(rng);
    const Popularity pop = zipf(12, g);
    const double k = 0.5 + 10 * u(rng);
    BackhaulParams bh;
    bh.kappa_B = 0.5 + 10 * u(rng);
    bh.storage = 12 * u(rng);
    const double S = 12 * u(rng);
    const HierarchicalResult h = hierarchical_optimize(pop, k, S, bh);
    const oracle::JointResult ref = oracle::projected_gradient_joint(pop.pmf, k, S, bh.kappa_B, bh.storage);
    worst = std::max(worst, std::abs(h.outage - ref.objective));
    if (h.outage > h.uniform_storage_outage) ++above_uniform;
  }
  int unequal = 0;
  for (double g : {0.0, 0.4, 0.8}) {
    for (double ratio : {0.02, 0.1}) {
      SystemParams p = oracle::params_at(1000, ratio, g, 8.0);
      for (double c : {0.25, 1.0, 4.0}) {
        const auto [a, b] = colocated_vs_distributed(p, c, ColocationMode::Asymptotic);
        if (a != b) ++unequal;
      }
    }
  }
  Outcome o;
  o.pass = worst < 1e-5 && above_uniform == 0 && unequal == 0;
  o.detail = std::to_string(instances) + " M=12 instances, max |objective - oracle| = " + fmt("%.2e", worst) +
             ", above uniform-storage value: " + std::to_string(above_uniform) +
             ", co-location mismatches: " + std::to_string(unequal) + "/18";
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome ac9() {
  const auto dir = std::filesystem::temp_directory_path() / ("edge3c_ac9_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  Outcome o;
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / ("run" + std::to_string(i) + ".csv");
    const std::string cmd = std::string("\"") + EDGE3C_CLI + "\" sweep --config \"" + EDGE3C_DEFAULT_SCENARIO +
                            "\" --seed 42 --out \"" + out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) {
      o.pass = false;
      o.detail = "sweep command failed";
      return o;
    }
    outputs.push_back(slurp(out));
  }
  std::filesystem::remove_all(dir);
  o.pass = !outputs[0].empty() && outputs[0] == outputs[1];
  o.detail = "two CLI sweeps of the default scenario, " + std::to_string(outputs[0].size()) + " bytes, " +
             (o.pass ? "identical" : "different");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::pair<const char*, std::function<Outcome()>>>> criteria = {
      {"AC1", {"optimal policy vs projected-gradient oracle", ac1}},
      {"AC2", {"Monte Carlo vs closed-form success probability", ac2}},
      {"AC3", {"gamma<1 asymptotic convergence", ac3}},
      {"AC4", {"gamma>1 bound sandwiches", ac4}},
      {"AC5", {"reference-policy formulas", ac5}},
      {"AC6", {"lemma bound oracles", ac6}},
      {"AC7", {"minimum-latency round trip", ac7}},
      {"AC8", {"network variants", ac8}},
      {"AC9", {"sweep determinism", ac9}},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  int ran = 0;
  for (const auto& [id, entry] : criteria) {
    if (!only.empty() && only != id) continue;
    ++ran;
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s  %s: %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", entry.first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
