#include "causal/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "causal/counter.hpp"
#include "causal/deadline.hpp"
#include "causal/oracle.hpp"

namespace causal {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream ss(text);
  T v{};
  if (!(ss >> v) || !ss.eof()) {
    throw ValidationError("plan: bad value '" + text + "' for '" + key + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError("plan: bad boolean '" + text + "' for '" + key + "'");
}

char parse_separator(const std::string& text) {
  if (text == "tab" || text == "\\t") return '\t';
  if (text == "space") return ' ';
  if (text == "comma") return ',';
  if (text.size() == 1) return text[0];
  throw ValidationError("plan: separator must be one character, 'tab', 'space' or 'comma'");
}

SweepVariable parse_sweep(const std::string& text) {
  if (text == "N" || text == "n" || text == "n_links") return SweepVariable::n_links;
  if (text == "delta") return SweepVariable::delta;
  if (text == "K" || text == "k" || text == "max_length") return SweepVariable::max_length;
  throw ValidationError("plan: unknown sweep variable '" + text + "'");
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "streaming") return Algorithm::streaming;
  if (text == "baseline") return Algorithm::baseline;
  throw ValidationError("plan: unknown algorithm '" + text + "'");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Solves the (small, dense) normal equations by Gaussian elimination with
// partial pivoting. rows[i] holds the regressors of observation i.
std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& y) {
  const std::size_t p = rows.front().size();
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] += rows[i][r] * rows[i][c];
      a[r][p] += rows[i][r] * y[i];
    }
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-300) throw ValidationError("fit: singular design");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t r = 0; r < p; ++r) beta[r] = a[r][p] / a[r][r];
  return beta;
}

struct RunOutcome {
  RunStatus status = RunStatus::ok;
  double seconds = 0.0;
  std::size_t peak_window = 0;
  std::size_t distinct = 0;
  Count total = 0;
};

RunOutcome run_once(Algorithm algorithm, std::span<const TimeStampedLink> links,
                    const CountParameters& params, const BenchmarkPlan& plan) {
  using Clock = std::chrono::steady_clock;
  RunOutcome out;
  const auto start = Clock::now();
  try {
    if (algorithm == Algorithm::streaming) {
      Deadline deadline = Deadline::after(std::chrono::duration<double>(plan.budget_seconds));
      StreamingCounter counter(params);
      for (const auto& link : links) {
        counter.process_link(link);
        deadline.tick("streaming");
      }
      out.peak_window = counter.peak_window_size();
      out.distinct = counter.result().size();
      out.total = counter.result().total();
    } else {
      BaselineOptions options;
      options.cap = plan.enumeration_cap;
      options.deadline = Deadline::after(std::chrono::duration<double>(plan.budget_seconds));
      PathCountMap result = baseline_count(links, params, options);
      out.distinct = result.size();
      out.total = result.total();
    }
  } catch (const TimeoutError&) {
    out.status = RunStatus::timeout;
  } catch (const RefusalError&) {
    out.status = RunStatus::refused;
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (out.status == RunStatus::ok && out.seconds > plan.budget_seconds) {
    out.status = RunStatus::timeout;
  }
  return out;
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::n_links: return "N";
    case SweepVariable::delta: return "delta";
    case SweepVariable::max_length: return "K";
  }
  return "?";
}

std::string to_string(Algorithm a) {
  return a == Algorithm::streaming ? "streaming" : "baseline";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::timeout: return "timeout";
    case RunStatus::refused: return "refused";
  }
  return "?";
}

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::linear: return "linear";
    case FitModel::quadratic: return "quadratic";
    case FitModel::exponential: return "exponential";
    case FitModel::power: return "power";
  }
  return "?";
}

FitModel parse_fit_model(const std::string& name) {
  if (name == "linear") return FitModel::linear;
  if (name == "quadratic") return FitModel::quadratic;
  if (name == "exponential") return FitModel::exponential;
  if (name == "power") return FitModel::power;
  throw ValidationError("unknown fit model '" + name + "'");
}

void BenchmarkPlan::validate() const {
  if (repetitions < 1) throw ValidationError("plan: repetitions must be >= 1");
  if (!(budget_seconds > 0.0)) throw ValidationError("plan: budget_s must be positive");
  if (algorithms.empty()) throw ValidationError("plan: no algorithms");
  if (max_length < 1) throw ValidationError("plan: max_length must be >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw ValidationError("plan: sweep values must be positive");
    if (i > 0 && values[i] <= values[i - 1]) {
      throw ValidationError("plan: sweep values must be strictly increasing");
    }
  }
}

BenchmarkPlan parse_plan(std::istream& in) {
  BenchmarkPlan plan;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("plan: expected 'key = value'", line_number);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "dataset") {
      if (value == "synthetic") plan.dataset.file.reset();
      else plan.dataset.file = value;
    } else if (key == "separator") {
      plan.dataset.separator = parse_separator(value);
    } else if (key == "nodes") {
      plan.dataset.synth.n_nodes = parse_number<std::size_t>(key, value);
    } else if (key == "links") {
      plan.dataset.synth.n_links = parse_number<std::size_t>(key, value);
    } else if (key == "horizon") {
      plan.dataset.synth.time_horizon = parse_number<Timestamp>(key, value);
    } else if (key == "density") {
      plan.dataset.synth.edge_density = parse_number<double>(key, value);
    } else if (key == "seed") {
      plan.dataset.synth.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "sweep") {
      plan.sweep = parse_sweep(value);
    } else if (key == "values") {
      plan.values.clear();
      for (const auto& v : split_list(value)) {
        plan.values.push_back(parse_number<std::int64_t>(key, v));
      }
    } else if (key == "n_links") {
      plan.n_links = parse_number<std::size_t>(key, value);
    } else if (key == "delta") {
      plan.delta = Delta::parse(value);
    } else if (key == "max_length" || key == "K") {
      plan.max_length = parse_number<std::size_t>(key, value);
    } else if (key == "algorithms") {
      plan.algorithms.clear();
      for (const auto& a : split_list(value)) plan.algorithms.push_back(parse_algorithm(a));
    } else if (key == "repetitions") {
      plan.repetitions = parse_number<std::size_t>(key, value);
    } else if (key == "budget_s") {
      plan.budget_seconds = parse_number<double>(key, value);
    } else if (key == "warmup") {
      plan.warmup = parse_bool(key, value);
    } else if (key == "skip_after_timeout") {
      plan.skip_after_timeout = parse_bool(key, value);
    } else if (key == "cap") {
      plan.enumeration_cap = parse_number<std::uint64_t>(key, value);
    } else {
      throw ParseError("plan: unknown key '" + key + "'", line_number);
    }
  }
  plan.validate();
  return plan;
}

BenchmarkPlan load_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open plan file '" + path + "'");
  return parse_plan(in);
}

TemporalLinkSequence load_dataset(const DatasetSource& source) {
  if (source.file) {
    ReaderOptions options;
    options.separator = source.separator;
    options.sort_mode = SortMode::sort;
    return load_sequence_file(*source.file, options);
  }
  return synth_generate(source.synth);
}

std::vector<BenchmarkRecord> run_sweep(const BenchmarkPlan& plan, const TemporalLinkSequence& data) {
  plan.validate();
  check_chronological(data.links);
  const std::size_t base_n = plan.n_links == 0 ? data.size() : plan.n_links;
  if (base_n > data.size()) {
    throw ValidationError("plan: n_links exceeds the dataset size " + std::to_string(data.size()));
  }
  if (plan.sweep == SweepVariable::n_links) {
    for (auto v : plan.values) {
      if (static_cast<std::size_t>(v) > data.size()) {
        throw ValidationError("plan: prefix length " + std::to_string(v) +
                              " exceeds the dataset size " + std::to_string(data.size()));
      }
    }
  }

  struct Point {
    std::span<const TimeStampedLink> links;
    CountParameters params;
    BenchmarkRecord proto;
  };
  std::vector<Point> points;
  for (auto value : plan.values) {
    std::size_t n = base_n;
    Delta delta = plan.delta;
    std::size_t k = plan.max_length;
    switch (plan.sweep) {
      case SweepVariable::n_links: n = static_cast<std::size_t>(value); break;
      case SweepVariable::delta: delta = Delta::finite(value); break;
      case SweepVariable::max_length: k = static_cast<std::size_t>(value); break;
    }
    BenchmarkRecord proto;
    proto.n_links = n;
    proto.delta = delta;
    proto.max_length = k;
    points.push_back({std::span<const TimeStampedLink>(data.links).first(n), CountParameters(delta, k),
                      proto});
  }

  std::vector<BenchmarkRecord> records;
  for (Algorithm algorithm : plan.algorithms) {
    // Repetitions run round-robin over the sweep points so slow phases of
    // the machine spread across all points instead of biasing one.
    std::vector<std::optional<RunOutcome>> failed(points.size());
    std::vector<std::vector<BenchmarkRecord>> per_point(points.size());
    std::size_t skip_from = points.size();
    const RunOutcome skipped{RunStatus::timeout, plan.budget_seconds, 0, 0, 0};

    auto visit = [&](std::size_t i) -> std::optional<RunOutcome> {
      if (failed[i]) return failed[i];
      if (i >= skip_from) return skipped;
      RunOutcome o = run_once(algorithm, points[i].links, points[i].params, plan);
      if (o.status != RunStatus::ok) {
        failed[i] = o;
        if (o.status == RunStatus::timeout && plan.skip_after_timeout) skip_from = std::min(skip_from, i + 1);
      }
      return o;
    };

    if (plan.warmup) {
      for (std::size_t i = 0; i < points.size(); ++i) visit(i);
    }
    for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        const RunOutcome o = *visit(i);
        BenchmarkRecord r = points[i].proto;
        r.algorithm = algorithm;
        r.rep = rep;
        r.wall_time_s = o.seconds;
        r.status = o.status;
        r.peak_window = o.peak_window;
        r.distinct_paths = o.distinct;
        r.total_instances = o.total;
        per_point[i].push_back(r);
      }
    }
    for (auto& rs : per_point) records.insert(records.end(), rs.begin(), rs.end());
  }
  return records;
}

std::vector<BenchmarkRecord> run_sweep(const BenchmarkPlan& plan) {
  plan.validate();
  const TemporalLinkSequence data = load_dataset(plan.dataset);
  return run_sweep(plan, data);
}

void write_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.n_links << ',' << r.delta.to_string() << ','
        << r.max_length << ',' << r.rep << ',' << std::setprecision(9) << r.wall_time_s << ','
        << r.distinct_paths << ',' << r.total_instances << ',' << to_string(r.status) << '\n';
  }
}

double sweep_value(const BenchmarkRecord& r, SweepVariable v) {
  switch (v) {
    case SweepVariable::n_links: return static_cast<double>(r.n_links);
    case SweepVariable::delta:
      return r.delta.is_infinite() ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(r.delta.value());
    case SweepVariable::max_length: return static_cast<double>(r.max_length);
  }
  return 0.0;
}

FitReport fit_points(const std::vector<double>& x, const std::vector<double>& y, FitModel model) {
  if (x.size() != y.size()) throw ValidationError("fit: x and y differ in length");
  if (x.size() < 3) throw ValidationError("fit: need at least 3 points, have " + std::to_string(x.size()));

  FitReport report;
  report.model = model;
  report.x = x;
  report.median_time = y;

  std::vector<double> xs = x, ys = y;
  if (model == FitModel::exponential || model == FitModel::power) {
    for (double& v : ys) {
      if (!(v > 0.0)) throw ValidationError("fit: log-space model needs positive times");
      v = std::log(v);
    }
  }
  if (model == FitModel::power) {
    for (double& v : xs) {
      if (!(v > 0.0)) throw ValidationError("fit: power model needs positive x");
      v = std::log(v);
    }
  }
  // Scale x into [-1, 1] for conditioning, then map coefficients back.
  double scale = 0.0;
  for (double v : xs) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  const std::size_t degree = model == FitModel::quadratic ? 2 : 1;
  std::vector<std::vector<double>> rows;
  for (double v : xs) {
    std::vector<double> row{1.0};
    for (std::size_t d = 1; d <= degree; ++d) row.push_back(std::pow(v / scale, double(d)));
    rows.push_back(std::move(row));
  }
  auto beta = least_squares(rows, ys);
  for (std::size_t d = 1; d <= degree; ++d) beta[d] /= std::pow(scale, double(d));
  report.coefficients = beta;

  double mean = 0.0;
  for (double v : ys) mean += v;
  mean /= double(ys.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double pred = 0.0;
    for (std::size_t d = 0; d <= degree; ++d) pred += beta[d] * std::pow(xs[i], double(d));
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-24 ? 1.0 : 0.0);
  return report;
}

FitReport fit_scaling(const std::vector<BenchmarkRecord>& records, SweepVariable sweep,
                      FitModel model) {
  std::map<double, std::vector<double>> by_point;
  std::optional<Algorithm> algorithm;
  for (const auto& r : records) {
    if (r.status != RunStatus::ok) continue;
    if (algorithm && *algorithm != r.algorithm) {
      throw ValidationError("fit: records mix algorithms");
    }
    algorithm = r.algorithm;
    by_point[sweep_value(r, sweep)].push_back(r.wall_time_s);
  }
  std::vector<double> x, y;
  for (auto& [v, times] : by_point) {
    x.push_back(v);
    y.push_back(median(times));
  }
  if (x.size() < 3) {
    throw ValidationError("fit: need at least 3 sweep points with status ok, have " +
                          std::to_string(x.size()));
  }
  return fit_points(x, y, model);
}

void write_fit_report(std::ostream& out, const FitReport& report) {
  out << "model\t" << to_string(report.model) << '\n';
  out << std::setprecision(10);
  for (std::size_t i = 0; i < report.coefficients.size(); ++i) {
    out << "c" << i << '\t' << report.coefficients[i] << '\n';
  }
  out << "r_squared\t" << report.r_squared << '\n';
  out << "points\t" << report.x.size() << '\n';
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    out << "point\t" << report.x[i] << '\t' << report.median_time[i] << '\n';
  }
}

}  // namespace causal
