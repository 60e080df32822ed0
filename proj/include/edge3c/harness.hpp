#pragma once

// Experiment specs (flat key = value files), sweep execution and CSV output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edge3c/model.hpp"
#include "edge3c/simulator.hpp"

namespace edge3c {

enum class SweepAxis { LatencyD, CacheRatio, ZipfGamma, Density, BackhaulProb };
enum class PolicyKind { Optimal, MostPopular, Uniform };
enum class Evaluator { ClosedForm, Asymptotic, Bounds, MonteCarlo };
enum class Variant { None, BackhaulOnly, CacheBackhaul, Hierarchical, ColocatedCompare };

const char* to_string(SweepAxis a);
const char* to_string(PolicyKind p);
const char* to_string(Evaluator e);
const char* to_string(Variant v);

struct BackhaulSettings {
  double avail_prob = 0.5;
  double latency = 0.0;  // d_B
  double storage = 0.0;  // S_B
};

struct ExperimentSpec {
  SystemParams base;
  SweepAxis axis = SweepAxis::CacheRatio;
  std::vector<double> values;
  std::vector<PolicyKind> policies{PolicyKind::Optimal};
  std::vector<Evaluator> evaluators{Evaluator::ClosedForm};
  Variant variant = Variant::None;
  BackhaulSettings backhaul;
  double colocation_scale = 4.0;
  double target_outage = 0.0;  // > 0 adds D* to optimal/asymptotic rows (gamma < 1)
  TrialConfig mc;
  std::optional<std::uint64_t> seed;  // mc.seed from the file, if given
};

/// One output row. Missing values stay empty in the CSV.
struct RunRecord {
  double sweep_value = 0.0;
  std::string policy;
  std::string evaluator;
  std::optional<double> outage;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> std_error;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> d_star;
  std::optional<double> kappa_prime;
  std::optional<double> kappa_T;
  std::optional<double> secondary;  // corollary value, uniform-storage value, scaled point
  std::string error;
  double wall_time = 0.0;  // seconds; kept out of the CSV
};

/// Column names of emit_csv, in order.
const std::vector<std::string>& csv_columns();

/// Parses a spec. name is used in error messages. Throws ParseError
/// (syntax, unknown key, bad number) or ValidationError.
ExperimentSpec parse_spec(std::istream& in, const std::string& name = "<spec>");
ExperimentSpec load_spec(const std::string& path);

/// Checks the spec invariants; throws ValidationError naming the first one violated.
void validate_spec(const ExperimentSpec& spec);

/// Applies a sweep value to the base parameters.
SystemParams apply_axis(const ExperimentSpec& spec, double value, BackhaulSettings* backhaul);

/// The value the base parameters already hold on the spec's sweep axis.
double base_axis_value(const ExperimentSpec& spec);

/// flag > spec file > EDGE3C_SEED > 0.
std::uint64_t resolve_seed(const ExperimentSpec& spec, std::optional<std::uint64_t> flag);

/// Runs every (value, policy, evaluator) cell on up to `threads` workers.
/// Errors raised by a cell land in its error column. Output is sorted.
std::vector<RunRecord> run(const ExperimentSpec& spec, unsigned threads = 1);

/// Sorts by sweep value, then policy, then evaluator.
void sort_records(std::vector<RunRecord>& records);

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out);
/// Throws std::runtime_error with the OS message if the file cannot be written.
void emit_csv(const std::vector<RunRecord>& records, const std::string& path);

/// %.12g
std::string format_number(double v);

}  // namespace edge3c
