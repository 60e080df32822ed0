#include "edge3c/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "edge3c/analytics.hpp"
#include "edge3c/error.hpp"
#include "edge3c/policy.hpp"
#include "edge3c/variants.hpp"

namespace edge3c {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, what); }

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_fail(where, "not a number: '" + text + "'");
  return v;
}

std::uint64_t to_u64(const std::string& text, const std::string& where) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_fail(where, "not an unsigned integer: '" + text + "'");
  return v;
}

bool to_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  parse_fail(where, "not a boolean: '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class E, std::size_t N>
E lookup(const std::string& name, const std::pair<const char*, E> (&table)[N], const std::string& where) {
  for (const auto& [key, value] : table) {
    if (name == key) return value;
  }
  std::string options;
  for (const auto& entry : table) options += std::string(options.empty() ? "" : ", ") + entry.first;
  parse_fail(where, "unknown value '" + name + "' (expected one of " + options + ")");
}

constexpr std::pair<const char*, SweepAxis> kAxes[] = {
    {"latency_D", SweepAxis::LatencyD},     {"cache_ratio", SweepAxis::CacheRatio},
    {"zipf_gamma", SweepAxis::ZipfGamma},   {"density", SweepAxis::Density},
    {"backhaul_prob", SweepAxis::BackhaulProb}};
constexpr std::pair<const char*, PolicyKind> kPolicies[] = {
    {"optimal", PolicyKind::Optimal}, {"most_popular", PolicyKind::MostPopular},
    {"uniform", PolicyKind::Uniform}};
constexpr std::pair<const char*, Evaluator> kEvaluators[] = {
    {"closed_form", Evaluator::ClosedForm}, {"asymptotic", Evaluator::Asymptotic},
    {"bounds", Evaluator::Bounds},          {"monte_carlo", Evaluator::MonteCarlo}};
constexpr std::pair<const char*, Variant> kVariants[] = {
    {"none", Variant::None},
    {"backhaul_only", Variant::BackhaulOnly},
    {"cache_backhaul", Variant::CacheBackhaul},
    {"hierarchical", Variant::Hierarchical},
    {"colocated_compare", Variant::ColocatedCompare}};

template <class E, std::size_t N>
const char* name_of(E value, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

using Setter = std::function<void(ExperimentSpec&, const std::string&, const std::string&)>;

Setter num(double SystemParams::*field) {
  return [field](ExperimentSpec& s, const std::string& v, const std::string& w) {
    s.base.*field = to_double(v, w);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"system.lambda", num(&SystemParams::lambda_bs)},
      {"system.tx_power", num(&SystemParams::tx_power)},
      {"system.noise_power", num(&SystemParams::noise_power)},
      {"system.alpha", num(&SystemParams::pathloss)},
      {"system.nakagami_m", num(&SystemParams::nakagami_m)},
      {"system.bandwidth", num(&SystemParams::bandwidth)},
      {"system.compute_rate", num(&SystemParams::compute_rate)},
      {"system.upload_bits", num(&SystemParams::upload_bits)},
      {"system.download_bits", num(&SystemParams::download_bits)},
      {"system.compute_scale_up", num(&SystemParams::compute_scale_up)},
      {"system.compute_scale_down", num(&SystemParams::compute_scale_down)},
      {"system.latency", num(&SystemParams::latency)},
      {"system.cache_size", num(&SystemParams::cache_size)},
      {"system.zipf_gamma", num(&SystemParams::zipf_gamma)},
      {"system.library_size",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.base.library_size = static_cast<std::size_t>(to_u64(v, w));
       }},
      {"sweep.axis",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.axis = lookup(v, kAxes, w);
       }},
      {"sweep.values",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.values.clear();
         for (const auto& item : split_list(v)) s.values.push_back(to_double(item, w));
       }},
      {"run.policies",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.policies.clear();
         for (const auto& item : split_list(v)) s.policies.push_back(lookup(item, kPolicies, w));
       }},
      {"run.evaluators",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.evaluators.clear();
         for (const auto& item : split_list(v)) s.evaluators.push_back(lookup(item, kEvaluators, w));
       }},
      {"run.variant",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.variant = lookup(v, kVariants, w);
       }},
      {"run.target_outage",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.target_outage = to_double(v, w);
       }},
      {"backhaul.avail_prob",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.backhaul.avail_prob = to_double(v, w);
       }},
      {"backhaul.latency",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.backhaul.latency = to_double(v, w);
       }},
      {"backhaul.storage",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.backhaul.storage = to_double(v, w);
       }},
      {"variant.scale",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.colocation_scale = to_double(v, w);
       }},
      {"mc.trials",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.mc.trials = to_u64(v, w);
       }},
      {"mc.seed",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) { s.seed = to_u64(v, w); }},
      {"mc.radius",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.mc.radius = to_double(v, w);
       }},
      {"mc.truncation_eps",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.mc.truncation_eps = to_double(v, w);
       }},
      {"mc.radius_cap",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.mc.radius_cap = to_double(v, w);
       }},
      {"mc.stratified",
       [](ExperimentSpec& s, const std::string& v, const std::string& w) {
         s.mc.stratified = to_bool(v, w);
       }},
  };
  return table;
}

bool strictly_monotone(const std::vector<double>& v) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    up = up && v[i] > v[i - 1];
    down = down && v[i] < v[i - 1];
  }
  return up || down;
}

template <class E>
bool has_duplicates(const std::vector<E>& v) {
  return std::set<E>(v.begin(), v.end()).size() != v.size();
}

bool has(const std::vector<Evaluator>& v, Evaluator e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

CachingPolicy build_policy(PolicyKind kind, const Popularity& pop, double kp, double budget) {
  switch (kind) {
    case PolicyKind::Optimal: return optimal_policy(pop, kp, budget);
    case PolicyKind::MostPopular: return most_popular_policy(pop.size, budget);
    case PolicyKind::Uniform: return uniform_policy(pop.size, budget);
  }
  return uniform_policy(pop.size, budget);
}

// Everything that only depends on the sweep point.
struct Point {
  SystemParams params;
  BackhaulSettings backhaul;
  DerivedParams derived;
  Popularity pop;
};

void fill_point_values(RunRecord& r, const Point& pt) {
  r.kappa_prime = pt.derived.kappa_prime;
  r.kappa_T = pt.derived.kappa_T;
}

void set_point(RunRecord& r, double v) {
  r.outage = v;
  r.lower = v;
  r.upper = v;
}

void evaluate_cell(RunRecord& r, const ExperimentSpec& spec, const Point& pt, PolicyKind kind,
                   const CachingPolicy& policy, Evaluator ev, std::uint64_t row_seed) {
  const SystemParams& p = pt.params;
  const DerivedParams& d = pt.derived;
  switch (ev) {
    case Evaluator::ClosedForm:
      set_point(r, outage(policy, pt.pop, d));
      break;
    case Evaluator::Asymptotic:
      if (kind == PolicyKind::Optimal) {
        const AsymptoticOutage a = asymptotic_outage_lt1(p, d, regime_breakpoints(p, d));
        set_point(r, a.value);
        r.secondary = a.corollary;
        if (spec.target_outage > 0.0) r.d_star = min_latency(p, d, spec.target_outage).d_star;
      } else {
        const auto ref = kind == PolicyKind::Uniform ? ReferenceKind::Uniform : ReferenceKind::MostPopular;
        set_point(r, reference_outage(ref, p, d).lower);
      }
      break;
    case Evaluator::Bounds: {
      OutageBounds b;
      if (kind == PolicyKind::Optimal) {
        const AsymptoticBounds ab = asymptotic_outage_gt1(p, d, regime_breakpoints(p, d));
        b = ab.bounds;
        if (ab.corollary) r.secondary = ab.corollary->upper;
      } else {
        const auto ref = kind == PolicyKind::Uniform ? ReferenceKind::Uniform : ReferenceKind::MostPopular;
        b = reference_outage(ref, p, d);
        if (b.raw_lower == b.raw_upper) r.outage = b.raw_lower;
      }
      r.lower = b.raw_lower;
      r.upper = b.raw_upper;
      break;
    }
    case Evaluator::MonteCarlo: {
      TrialConfig cfg = spec.mc;
      cfg.seed = row_seed;
      cfg.threads = 1;
      const OutageEstimate e = simulate_outage(policy, pt.pop, p, cfg);
      r.outage = e.mean;
      r.std_error = e.std_error;
      r.trials = e.trials;
      r.seed = e.seed;
      break;
    }
  }
}

void variant_rows(std::vector<RunRecord>& out, const ExperimentSpec& spec, const Point* pt,
                  double value, const std::string& point_error,
                  const std::vector<std::pair<PolicyKind, CachingPolicy>>& policies) {
  if (spec.variant == Variant::None) return;
  const std::string ev = to_string(spec.variant);

  auto guarded = [&](const std::string& policy, auto&& body) {
    RunRecord r;
    r.sweep_value = value;
    r.policy = policy;
    r.evaluator = ev;
    const auto start = std::chrono::steady_clock::now();
    if (!pt) {
      r.error = point_error;
    } else {
      fill_point_values(r, *pt);
      try {
        body(r);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  };
  auto make_bh = [&] {
    return make_backhaul(pt->params, pt->backhaul.avail_prob, pt->backhaul.latency,
                         pt->backhaul.storage);
  };

  switch (spec.variant) {
    case Variant::None: break;
    case Variant::BackhaulOnly:
      guarded("none", [&](RunRecord& r) { set_point(r, backhaul_only_outage(make_bh())); });
      break;
    case Variant::CacheBackhaul:
      if (!pt) {
        for (PolicyKind k : spec.policies) guarded(to_string(k), [](RunRecord&) {});
        break;
      }
      for (const auto& [kind, policy] : policies) {
        guarded(to_string(kind), [&](RunRecord& r) {
          const BackhaulParams bh = make_bh();
          set_point(r, cache_plus_backhaul_outage(policy, pt->pop, pt->derived, bh));
          r.secondary = backhaul_only_outage(bh);
        });
      }
      break;
    case Variant::Hierarchical:
      guarded("optimal", [&](RunRecord& r) {
        const HierarchicalResult h =
            hierarchical_optimize(pt->pop, pt->derived.kappa_prime, pt->params.cache_size, make_bh());
        set_point(r, h.outage);
        r.secondary = h.uniform_storage_outage;
      });
      break;
    case Variant::ColocatedCompare:
      guarded("optimal", [&](RunRecord& r) {
        const auto [base, scaled] =
            colocated_vs_distributed(pt->params, spec.colocation_scale, ColocationMode::Exact);
        set_point(r, base);
        r.secondary = scaled;
      });
      break;
  }
}

std::vector<RunRecord> run_point(const ExperimentSpec& spec, std::size_t index, std::uint64_t seed) {
  const double value = spec.values[index];
  std::vector<RunRecord> out;

  Point pt;
  std::string point_error;
  bool ok = true;
  try {
    pt.params = apply_axis(spec, value, &pt.backhaul);
    pt.derived = derive(pt.params);
    pt.pop = zipf(pt.params.library_size, pt.params.zipf_gamma);
  } catch (const std::exception& e) {
    ok = false;
    point_error = e.what();
  }

  std::vector<std::pair<PolicyKind, CachingPolicy>> policies;
  for (PolicyKind kind : spec.policies) {
    std::string policy_error = point_error;
    CachingPolicy policy;
    const auto start = std::chrono::steady_clock::now();
    if (ok) {
      try {
        policy = build_policy(kind, pt.pop, pt.derived.kappa_prime, pt.params.cache_size);
        policies.emplace_back(kind, policy);
      } catch (const std::exception& e) {
        policy_error = e.what();
      }
    }
    const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (Evaluator ev : spec.evaluators) {
      RunRecord r;
      r.sweep_value = value;
      r.policy = to_string(kind);
      r.evaluator = to_string(ev);
      const auto cell_start = std::chrono::steady_clock::now();
      if (ok) fill_point_values(r, pt);
      if (!policy_error.empty()) {
        r.error = policy_error;
      } else {
        const std::uint64_t row_seed =
            trial_seed(seed, (static_cast<std::uint64_t>(index) << 8) |
                                 (static_cast<std::uint64_t>(kind) << 4) |
                                 static_cast<std::uint64_t>(ev));
        try {
          evaluate_cell(r, spec, pt, kind, policy, ev, row_seed);
        } catch (const std::exception& e) {
          r.error = e.what();
        }
      }
      r.wall_time =
          setup + std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_start).count();
      out.push_back(std::move(r));
    }
  }
  variant_rows(out, spec, ok ? &pt : nullptr, value, point_error, policies);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string opt(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

const char* to_string(SweepAxis a) { return name_of(a, kAxes); }
const char* to_string(PolicyKind p) { return name_of(p, kPolicies); }
const char* to_string(Evaluator e) { return name_of(e, kEvaluators); }
const char* to_string(Variant v) { return name_of(v, kVariants); }

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "sweep_value", "policy", "evaluator", "outage",      "lower",   "upper",     "stderr",
      "trials",      "seed",   "d_star",    "kappa_prime", "kappa_T", "secondary", "error"};
  return cols;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExperimentSpec parse_spec(std::istream& in, const std::string& name) {
  ExperimentSpec spec;
  std::optional<double> cache_ratio;
  std::set<std::string> seen;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;

    const std::string where = name + ":" + std::to_string(lineno);
    const auto eq = body.find('=');
    if (eq == std::string::npos) parse_fail(where, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) parse_fail(where, "empty key");
    if (!seen.insert(key).second) parse_fail(where, "duplicate key '" + key + "'");

    const std::string at = where + " (" + key + ")";
    if (key == "system.cache_ratio") {
      cache_ratio = to_double(value, at);
      continue;
    }
    const auto it = setters().find(key);
    if (it == setters().end()) parse_fail(where, "unknown key '" + key + "'");
    it->second(spec, value, at);
  }
  if (cache_ratio) {
    if (seen.count("system.cache_size")) {
      invalid("system.cache_size and system.cache_ratio are mutually exclusive");
    }
    spec.base.cache_size = *cache_ratio * static_cast<double>(spec.base.library_size);
  }
  if (spec.values.empty() && !seen.count("sweep.values")) spec.values = {base_axis_value(spec)};
  validate_spec(spec);
  return spec;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": " + std::strerror(errno));
  return parse_spec(in, path);
}

double base_axis_value(const ExperimentSpec& spec) {
  switch (spec.axis) {
    case SweepAxis::LatencyD: return spec.base.latency;
    case SweepAxis::CacheRatio:
      return spec.base.cache_size / static_cast<double>(spec.base.library_size);
    case SweepAxis::ZipfGamma: return spec.base.zipf_gamma;
    case SweepAxis::Density: return spec.base.lambda_bs;
    case SweepAxis::BackhaulProb: return spec.backhaul.avail_prob;
  }
  return 0.0;
}

SystemParams apply_axis(const ExperimentSpec& spec, double value, BackhaulSettings* backhaul) {
  SystemParams p = spec.base;
  if (backhaul) *backhaul = spec.backhaul;
  switch (spec.axis) {
    case SweepAxis::LatencyD: p.latency = value; break;
    case SweepAxis::CacheRatio: p.cache_size = value * static_cast<double>(p.library_size); break;
    case SweepAxis::ZipfGamma: p.zipf_gamma = value; break;
    case SweepAxis::Density: p.lambda_bs = value; break;
    case SweepAxis::BackhaulProb:
      if (backhaul) backhaul->avail_prob = value;
      break;
  }
  return p;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.values.empty()) invalid("sweep.values must not be empty");
  if (!strictly_monotone(spec.values)) invalid("sweep.values must be strictly monotone");
  if (spec.policies.empty()) invalid("run.policies must not be empty");
  if (spec.evaluators.empty()) invalid("run.evaluators must not be empty");
  if (has_duplicates(spec.policies)) invalid("run.policies lists a policy twice");
  if (has_duplicates(spec.evaluators)) invalid("run.evaluators lists an evaluator twice");
  if (spec.mc.trials < 1) invalid("mc.trials must be at least 1");
  if (!(spec.mc.truncation_eps > 0.0)) invalid("mc.truncation_eps must be positive");
  if (!(spec.mc.radius >= 0.0)) invalid("mc.radius must be non-negative");
  if (!(spec.mc.radius_cap > 0.0)) invalid("mc.radius_cap must be positive");
  if (!(spec.target_outage >= 0.0)) invalid("run.target_outage must be non-negative");
  if (!(spec.colocation_scale > 0.0) || !std::isfinite(spec.colocation_scale)) {
    invalid("variant.scale must be positive");
  }

  for (double v : spec.values) {
    BackhaulSettings bh;
    const SystemParams p = apply_axis(spec, v, &bh);
    const std::string at = std::string(to_string(spec.axis)) + "=" + format_number(v);
    try {
      validate_params(p);
    } catch (const Error& e) {
      // A deadline below the compute delay is reported on the row instead.
      if (e.kind() != ErrorKind::InfeasibleLatency) invalid(at + ": " + e.what());
    }
    const double g = p.zipf_gamma;
    if (has(spec.evaluators, Evaluator::Asymptotic) && !(g < 1.0)) {
      invalid(at + ": evaluator 'asymptotic' needs zipf_gamma < 1, got " + format_number(g));
    }
    if (has(spec.evaluators, Evaluator::Bounds) && !(g > 1.0)) {
      invalid(at + ": evaluator 'bounds' needs zipf_gamma > 1, got " + format_number(g));
    }
    if (spec.variant == Variant::ColocatedCompare && !(g < 1.0)) {
      invalid(at + ": variant 'colocated_compare' needs zipf_gamma < 1");
    }
    if (spec.variant != Variant::None && spec.variant != Variant::ColocatedCompare) {
      if (!(bh.avail_prob >= 0.0 && bh.avail_prob <= 1.0)) {
        invalid(at + ": backhaul.avail_prob must be in [0,1]");
      }
      if (!(bh.latency >= 0.0)) invalid(at + ": backhaul.latency must be non-negative");
      if (!(bh.storage >= 0.0 && bh.storage <= static_cast<double>(p.library_size))) {
        invalid(at + ": backhaul.storage must be in [0, M]");
      }
    }
  }
}

std::uint64_t resolve_seed(const ExperimentSpec& spec, std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (spec.seed) return *spec.seed;
  if (const char* env = std::getenv("EDGE3C_SEED"); env && *env) {
    const std::string text = trim(env);
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) invalid("EDGE3C_SEED is not an unsigned integer: '" + text + "'");
    return v;
  }
  return 0;
}

std::vector<RunRecord> run(const ExperimentSpec& spec, unsigned threads) {
  validate_spec(spec);
  const std::uint64_t seed = spec.seed.value_or(0);
  const std::size_t n = spec.values.size();
  std::vector<std::vector<RunRecord>> per_point(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) per_point[i] = run_point(spec, i, seed);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<RunRecord> records;
  for (auto& rows : per_point) {
    for (auto& r : rows) records.push_back(std::move(r));
  }
  sort_records(records);
  return records;
}

void sort_records(std::vector<RunRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.sweep_value, a.policy, a.evaluator) <
           std::tie(b.sweep_value, b.policy, b.evaluator);
  });
}

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const RunRecord& r : records) {
    out << format_number(r.sweep_value) << ',' << csv_field(r.policy) << ',' << csv_field(r.evaluator)
        << ',' << opt(r.outage) << ',' << opt(r.lower) << ',' << opt(r.upper) << ','
        << opt(r.std_error) << ',' << opt(r.trials) << ',' << opt(r.seed) << ',' << opt(r.d_star)
        << ',' << opt(r.kappa_prime) << ',' << opt(r.kappa_T) << ',' << opt(r.secondary) << ','
        << csv_field(r.error) << '\n';
  }
}

void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  emit_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed: " + std::strerror(errno));
}

}  // namespace edge3c
