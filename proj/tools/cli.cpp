#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "causal/analysis.hpp"
#include "causal/bench.hpp"
#include "causal/counter.hpp"
#include "causal/oracle.hpp"
#include "causal/output.hpp"

namespace causal::cli {

namespace {

struct InputFlags {
  std::string input;
  std::string separator = "\\t";
  bool sort = false;
  bool require_sorted = false;
};

struct CountFlags {
  InputFlags in;
  std::string delta;
  std::size_t max_length = 0;
  std::string output;
  std::string engine = "brute";
  std::uint64_t cap = 10'000'000;
};

struct BoundFlags {
  InputFlags in;
  std::string delta = "inf";
  std::size_t max_length = 0;
  bool json = false;
};

struct BenchFlags {
  std::string plan;
  std::string output;
  std::vector<std::string> fits;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

char parse_separator(const std::string& text) {
  if (text == "\\t" || text == "tab" || text == "\t") return '\t';
  if (text == "space") return ' ';
  if (text == "comma") return ',';
  if (text.size() == 1) return text[0];
  throw UsageError("--sep must be a single character, 'tab', 'space' or 'comma'");
}

void add_input_flags(CLI::App* cmd, InputFlags& f) {
  cmd->add_option("input", f.input, "Edge-list file, '-' for stdin")->required();
  cmd->add_option("--sep", f.separator, "Field separator (default TAB)");
  auto* sort = cmd->add_flag("--sort", f.sort, "Stably sort records by timestamp");
  auto* req = cmd->add_flag("--require-sorted", f.require_sorted,
                            "Reject out-of-order records (default)");
  sort->excludes(req);
}

ReaderOptions reader_options(const InputFlags& f) {
  ReaderOptions o;
  o.separator = parse_separator(f.separator);
  o.sort_mode = f.sort ? SortMode::sort : SortMode::require_sorted;
  return o;
}

CountParameters count_parameters(const std::string& delta, std::size_t k) {
  Delta d = Delta::infinite();
  try {
    d = Delta::parse(delta);
  } catch (const ValidationError& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
  if (k < 1) throw UsageError("--max-length must be >= 1");
  return CountParameters(d, k);
}

// Opens a file or hands back `fallback` for "-".
class InputStream {
 public:
  InputStream(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw ValidationError("cannot open input file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file '" + path + "'");
  f << text;
}

void print_summary(std::ostream& err, std::size_t n, std::size_t nodes, const PathCountMap& counts) {
  err << "links\t" << n << '\n'
      << "nodes\t" << nodes << '\n'
      << "distinct_paths\t" << counts.size() << '\n'
      << "total_instances\t" << counts.total() << '\n';
}

int cmd_count(const CountFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const CountParameters params = count_parameters(f.delta, f.max_length);
  const ReaderOptions options = reader_options(f.in);
  InputStream input(f.in.input, in);

  NodeTable table;
  PathCountMap result;
  std::size_t n = 0;
  if (options.sort_mode == SortMode::require_sorted) {
    // Stream records straight into the counter.
    LinkReader reader(input.get(), options.separator, table);
    StreamingCounter counter(params);
    while (auto link = reader.next()) counter.process_link(*link);
    n = counter.links_processed();
    result = std::move(counter).take_result();
  } else {
    TemporalLinkSequence data = load_sequence(input.get(), options);
    n = data.size();
    result = count_causal_paths(data, params);
    table = std::move(data.nodes);
  }
  std::ostringstream text;
  write_path_counts(text, result, table);
  emit(f.output, out, text.str());
  print_summary(err, n, table.size(), result);
  return kOk;
}

int cmd_oracle(const CountFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const CountParameters params = count_parameters(f.delta, f.max_length);
  if (f.engine != "brute" && f.engine != "baseline") {
    throw UsageError("--engine must be 'brute' or 'baseline'");
  }
  InputStream input(f.in.input, in);
  TemporalLinkSequence data = load_sequence(input.get(), reader_options(f.in));
  PathCountMap result;
  if (f.engine == "brute") {
    EnumerationOptions o;
    o.cap = f.cap;
    result = brute_force_count(data, params, o);
  } else {
    BaselineOptions o;
    o.cap = f.cap;
    result = baseline_count(data, params, o);
  }
  std::ostringstream text;
  write_path_counts(text, result, data.nodes);
  emit(f.output, out, text.str());
  print_summary(err, data.size(), data.nodes.size(), result);
  return kOk;
}

int cmd_bound(const BoundFlags& f, std::istream& in, std::ostream& out) {
  const CountParameters params = count_parameters(f.delta, f.max_length);
  InputStream input(f.in.input, in);
  TemporalLinkSequence data = load_sequence(input.get(), reader_options(f.in));
  const ComplexityReport r = complexity_report(data, params);

  if (f.json) {
    nlohmann::json j;
    j["nodes"] = r.n_nodes;
    j["links"] = r.n_links;
    j["edges"] = r.n_edges;
    j["max_length"] = r.max_length;
    j["delta"] = r.delta.to_string();
    j["lambda_max"] = r.lambda_max;
    j["m"] = r.load.m;
    j["m_delta"] = r.load.m_delta;
    j["window_peak"] = r.load.window_peak;
    auto& per = j["walks"] = nlohmann::json::array();
    for (const auto& w : r.bound.per_length) {
      per.push_back({{"k", w.k}, {"exact", w.exact}, {"saturated", w.saturated},
                     {"spectral_bound", w.spectral}});
    }
    j["walks_total"] = r.bound.exact_total;
    j["walks_total_saturated"] = r.bound.exact_total_saturated;
    j["capital_lambda_bound"] = r.bound.spectral_total;
    j["cost_headline"] = r.headline_cost;
    j["cost_detailed"] = r.detailed_cost;
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << std::setprecision(10);
  out << "nodes\t" << r.n_nodes << '\n'
      << "links\t" << r.n_links << '\n'
      << "aggregated_edges\t" << r.n_edges << '\n'
      << "max_length\t" << r.max_length << '\n'
      << "delta\t" << r.delta.to_string() << '\n'
      << "lambda_max\t" << r.lambda_max << '\n'
      << "m\t" << r.load.m << '\n'
      << "m_delta\t" << r.load.m_delta << '\n'
      << "window_peak\t" << r.load.window_peak << '\n';
  for (const auto& w : r.bound.per_length) {
    out << "walks_" << w.k << '\t' << w.exact << (w.saturated ? " (saturated)" : "") << '\n';
    out << "bound_" << w.k << '\t' << w.spectral << '\n';
  }
  out << "walks_total\t" << r.bound.exact_total
      << (r.bound.exact_total_saturated ? " (saturated)" : "") << '\n'
      << "capital_lambda_bound\t" << r.bound.spectral_total << '\n'
      << "cost_headline\t" << r.headline_cost << "\t# N|V|K^2[m_delta lambda^(K-2) + lambda^K]\n"
      << "cost_detailed\t" << r.detailed_cost << "\t# N K[m_delta delta Lambda(K-2) + Lambda(K)]\n";
  return kOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  const BenchmarkPlan plan = load_plan_file(f.plan);
  std::vector<FitModel> models;
  for (const auto& m : f.fits) {
    try {
      models.push_back(parse_fit_model(m));
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
  }
  const auto records = run_sweep(plan);
  std::ostringstream csv;
  write_csv(csv, records);
  emit(f.output, out, csv.str());

  for (FitModel model : models) {
    for (Algorithm a : plan.algorithms) {
      std::vector<BenchmarkRecord> mine;
      for (const auto& r : records) {
        if (r.algorithm == a) mine.push_back(r);
      }
      err << "algorithm\t" << to_string(a) << '\n';
      try {
        write_fit_report(err, fit_scaling(mine, plan.sweep, model));
      } catch (const ValidationError& e) {
        err << "fit_error\t" << e.what() << '\n';
      }
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Count causal (time-respecting) paths in time-stamped edge lists", "causalpaths"};
  app.require_subcommand(1);

  CountFlags count_flags;
  auto* count = app.add_subcommand("count", "Streaming causal path counts");
  add_input_flags(count, count_flags.in);
  count->add_option("--delta", count_flags.delta, "Maximum time difference (integer >= 1 or 'inf')")
      ->required();
  count->add_option("--max-length,-K", count_flags.max_length, "Maximum path length K")->required();
  count->add_option("--output,-o", count_flags.output, "Output file (default stdout)");

  CountFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "Reference counts by brute force or the DAG baseline");
  add_input_flags(oracle, oracle_flags.in);
  oracle->add_option("--delta", oracle_flags.delta, "Maximum time difference")->required();
  oracle->add_option("--max-length,-K", oracle_flags.max_length, "Maximum path length K")
      ->required();
  oracle->add_option("--engine", oracle_flags.engine, "brute | baseline")
      ->check(CLI::IsMember({"brute", "baseline"}));
  oracle->add_option("--cap", oracle_flags.cap, "Enumeration cap before refusing");
  oracle->add_option("--output,-o", oracle_flags.output, "Output file (default stdout)");

  BoundFlags bound_flags;
  auto* bound = app.add_subcommand("bound", "Spectral path-count bound and complexity report");
  add_input_flags(bound, bound_flags.in);
  bound->add_option("--max-length,-K", bound_flags.max_length, "Maximum path length K")
      ->required();
  bound->add_option("--delta", bound_flags.delta, "Maximum time difference for m_delta");
  bound->add_flag("--json", bound_flags.json, "Machine-readable output");

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep plan");
  bench->add_option("--plan", bench_flags.plan, "Plan file")->required();
  bench->add_option("--output,-o", bench_flags.output, "CSV output file (default stdout)");
  bench->add_option("--fit", bench_flags.fits,
                    "Fit model(s) for the median runtimes: linear, quadratic, exponential, power");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("causalpaths");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (count->parsed()) return cmd_count(count_flags, in, out, err);
    if (oracle->parsed()) return cmd_oracle(oracle_flags, in, out, err);
    if (bound->parsed()) return cmd_bound(bound_flags, in, out);
    if (bench->parsed()) return cmd_bench(bench_flags, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace causal::cli
