// edge3c command line: analyze, optimize, simulate, sweep, compare.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "edge3c/error.hpp"
#include "edge3c/harness.hpp"
#include "edge3c/policy.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

edge3c::ExperimentSpec load(const Options& opt) {
  edge3c::ExperimentSpec spec;
  if (opt.config.empty()) {
    spec.values = {edge3c::base_axis_value(spec)};
  } else {
    spec = edge3c::load_spec(opt.config);
  }
  spec.seed = edge3c::resolve_seed(spec, opt.seed);
  return spec;
}

// Writes to --out, or stdout when it is empty or "-".
template <class Body>
void with_output(const Options& opt, Body body) {
  if (opt.out.empty() || opt.out == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(opt.out + ": cannot open for writing");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error(opt.out + ": write failed");
}

void write_records(const Options& opt, const std::vector<edge3c::RunRecord>& records) {
  with_output(opt, [&](std::ostream& os) { edge3c::emit_csv(records, os); });
}

std::vector<edge3c::Evaluator> valid_evaluators(double gamma) {
  using edge3c::Evaluator;
  std::vector<Evaluator> evs{Evaluator::ClosedForm};
  if (gamma < 1.0) evs.push_back(Evaluator::Asymptotic);
  if (gamma > 1.0) evs.push_back(Evaluator::Bounds);
  evs.push_back(Evaluator::MonteCarlo);
  return evs;
}

void cmd_analyze(const Options& opt) {
  edge3c::ExperimentSpec spec = load(opt);
  spec.values = {edge3c::base_axis_value(spec)};
  spec.evaluators = valid_evaluators(edge3c::apply_axis(spec, spec.values[0], nullptr).zipf_gamma);
  write_records(opt, edge3c::run(spec, opt.threads));
}

void cmd_optimize(const Options& opt) {
  const edge3c::ExperimentSpec spec = load(opt);
  const edge3c::SystemParams p = spec.base;
  const edge3c::DerivedParams d = edge3c::derive(p);
  const edge3c::Popularity pop = edge3c::zipf(p.library_size, p.zipf_gamma);
  const edge3c::CachingPolicy policy = edge3c::optimal_policy(pop, d.kappa_prime, p.cache_size);
  with_output(opt, [&](std::ostream& os) {
    os << "task,probability\n";
    for (std::size_t f = 1; f <= policy.size(); ++f) {
      os << f << ',' << edge3c::format_number(policy(f)) << '\n';
    }
  });
}

void cmd_simulate(const Options& opt) {
  edge3c::ExperimentSpec spec = load(opt);
  spec.evaluators = {edge3c::Evaluator::MonteCarlo};
  spec.variant = edge3c::Variant::None;
  write_records(opt, edge3c::run(spec, opt.threads));
}

void cmd_sweep(const Options& opt) {
  const edge3c::ExperimentSpec spec = load(opt);
  write_records(opt, edge3c::run(spec, opt.threads));
}

// One row per sweep value, one closed-form outage column per policy.
void cmd_compare(const Options& opt) {
  using edge3c::PolicyKind;
  edge3c::ExperimentSpec spec = load(opt);
  spec.policies = {PolicyKind::MostPopular, PolicyKind::Optimal, PolicyKind::Uniform};
  spec.evaluators = {edge3c::Evaluator::ClosedForm};
  spec.variant = edge3c::Variant::None;
  const auto records = edge3c::run(spec, opt.threads);

  std::map<double, std::map<std::string, std::string>> table;
  for (const auto& r : records) {
    table[r.sweep_value][r.policy] =
        r.outage ? edge3c::format_number(*r.outage) : std::string("error");
  }
  with_output(opt, [&](std::ostream& os) {
    os << "sweep_value,optimal,most_popular,uniform\n";
    for (const auto& [value, row] : table) {
      os << edge3c::format_number(value);
      for (const char* name : {"optimal", "most_popular", "uniform"}) {
        const auto it = row.find(name);
        os << ',' << (it == row.end() ? std::string() : it->second);
      }
      os << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge3c: caching, computing and communication outage toolkit"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed_flag = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment spec (key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--seed", seed_flag, "seed, overrides the spec and EDGE3C_SEED");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  };

  std::map<std::string, void (*)(const Options&)> commands = {
      {"analyze", cmd_analyze}, {"optimize", cmd_optimize}, {"simulate", cmd_simulate},
      {"sweep", cmd_sweep},     {"compare", cmd_compare}};
  const std::map<std::string, std::string> help = {
      {"analyze", "single point, every evaluator valid for the gamma branch"},
      {"optimize", "print the optimal caching policy"},
      {"simulate", "Monte Carlo only over the sweep"},
      {"sweep", "run the full experiment spec"},
      {"compare", "closed-form outage of all policies side by side"}};
  for (const auto& [name, fn] : commands) add_common(app.add_subcommand(name, help.at(name)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    for (const auto& [name, fn] : commands) {
      CLI::App* sub = app.get_subcommand(name);
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) opt.seed = seed_flag;
      fn(opt);
    }
  } catch (const edge3c::Error& e) {
    std::cerr << "edge3c: " << e.what() << '\n';
    switch (e.kind()) {
      case edge3c::ErrorKind::ParseError:
      case edge3c::ErrorKind::ValidationError:
      case edge3c::ErrorKind::DomainError:
      case edge3c::ErrorKind::InfeasibleLatency:
      case edge3c::ErrorKind::BudgetInfeasible:
        return kExitValidation;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "edge3c: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
