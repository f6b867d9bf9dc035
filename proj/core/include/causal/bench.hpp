#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "causal/analysis.hpp"
#include "causal/model.hpp"

namespace causal {

enum class SweepVariable { n_links, delta, max_length };
enum class Algorithm { streaming, baseline };
enum class RunStatus { ok, timeout, refused };

std::string to_string(SweepVariable v);
std::string to_string(Algorithm a);
std::string to_string(RunStatus s);

struct DatasetSource {
  // Edge-list file; when empty the synthetic generator is used.
  std::optional<std::string> file;
  char separator = '\t';
  SynthParameters synth;
};

// A one-dimensional scaling experiment. The two parameters not being swept
// are held at n_links / delta / max_length. For an N sweep each point uses
// the first N links of the dataset.
struct BenchmarkPlan {
  DatasetSource dataset;
  SweepVariable sweep = SweepVariable::n_links;
  std::vector<std::int64_t> values;
  // 0 means the whole dataset.
  std::size_t n_links = 0;
  Delta delta = Delta::finite(1);
  std::size_t max_length = 2;
  std::vector<Algorithm> algorithms{Algorithm::streaming};
  std::size_t repetitions = 3;
  double budget_seconds = 60.0;
  bool warmup = true;
  // Once a point times out, record larger values of the same algorithm as
  // timeouts without running them.
  bool skip_after_timeout = true;
  std::uint64_t enumeration_cap = 10'000'000;

  // Throws ValidationError.
  void validate() const;
};

// Key-value plan file, one "key = value" per line, '#' comments. Keys:
// dataset (file path or "synthetic"), separator, nodes, links, horizon,
// density, seed, sweep (N | delta | K), values (comma list), n_links,
// delta, max_length, algorithms (comma list), repetitions, budget_s,
// warmup, skip_after_timeout, cap.
BenchmarkPlan parse_plan(std::istream& in);
BenchmarkPlan load_plan_file(const std::string& path);

struct BenchmarkRecord {
  Algorithm algorithm = Algorithm::streaming;
  std::size_t n_links = 0;
  Delta delta = Delta::infinite();
  std::size_t max_length = 0;
  std::size_t rep = 0;
  double wall_time_s = 0.0;
  std::size_t peak_window = 0;
  std::size_t distinct_paths = 0;
  Count total_instances = 0;
  RunStatus status = RunStatus::ok;
};

TemporalLinkSequence load_dataset(const DatasetSource& source);

// Runs every (algorithm, value, repetition). Repetitions are executed
// round-robin across values; records come back grouped by algorithm, value,
// rep. Timeouts and refusals become records; they never abort the sweep.
std::vector<BenchmarkRecord> run_sweep(const BenchmarkPlan& plan, const TemporalLinkSequence& data);
std::vector<BenchmarkRecord> run_sweep(const BenchmarkPlan& plan);

inline constexpr const char* kCsvHeader =
    "algorithm,N,delta,K,rep,wall_time_s,distinct_paths,total_instances,status";
void write_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);

enum class FitModel {
  linear,       // t = c0 + c1 x
  quadratic,    // t = c0 + c1 x + c2 x^2
  exponential,  // ln t = c0 + c1 x
  power,        // ln t = c0 + c1 ln x
};

std::string to_string(FitModel m);
FitModel parse_fit_model(const std::string& name);

struct FitReport {
  FitModel model = FitModel::linear;
  std::vector<double> coefficients;
  // Computed in the space the model is fitted in (log space for
  // exponential and power).
  double r_squared = 0.0;
  std::vector<double> x;
  std::vector<double> median_time;
};

// Sweep value of a record for the given variable.
double sweep_value(const BenchmarkRecord& r, SweepVariable v);

// Least-squares fit of the median wall time per sweep point. All ok records
// must share one algorithm; needs >= 3 distinct points.
FitReport fit_scaling(const std::vector<BenchmarkRecord>& records, SweepVariable sweep,
                      FitModel model);
// Same, directly on (x, y) pairs.
FitReport fit_points(const std::vector<double>& x, const std::vector<double>& y, FitModel model);

void write_fit_report(std::ostream& out, const FitReport& report);

}  // namespace causal
