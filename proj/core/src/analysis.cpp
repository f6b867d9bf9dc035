#include "causal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace causal {

AggregatedGraph::AggregatedGraph(std::size_t n_nodes) : neighbors_(n_nodes) {}

void AggregatedGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_nodes() || j >= n_nodes()) throw ValidationError("edge endpoint out of range");
  auto insert = [](std::vector<std::size_t>& v, std::size_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) return false;
    v.insert(it, x);
    return true;
  };
  if (insert(neighbors_[i], j)) {
    ++n_edges_;
    if (i != j) insert(neighbors_[j], i);
  }
}

bool AggregatedGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_nodes() || j >= n_nodes()) return false;
  return std::binary_search(neighbors_[i].begin(), neighbors_[i].end(), j);
}

void AggregatedGraph::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_nodes(); ++i) {
    double acc = 0.0;
    for (std::size_t j : neighbors_[i]) acc += x[j];
    y[i] = acc;
  }
}

AggregatedGraph aggregate(std::span<const TimeStampedLink> links, std::size_t n_nodes) {
  AggregatedGraph g(n_nodes);
  for (const auto& l : links) g.add_edge(l.source.value, l.target.value);
  return g;
}

AggregatedGraph aggregate(const TemporalLinkSequence& data) {
  return aggregate(data.links, data.nodes.size());
}

EigenEstimate lambda_max(const AggregatedGraph& graph, PowerIterationOptions options) {
  const std::size_t n = graph.n_nodes();
  if (n == 0) throw ValidationError("lambda_max: graph has no nodes");
  if (!(options.tolerance > 0.0)) throw ValidationError("lambda_max: tolerance must be positive");

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n);
  EigenEstimate est;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    graph.multiply(v, av);
    double rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) rho += v[i] * av[i];
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = av[i] - rho * v[i];
      res2 += r * r;
    }
    est.value = rho;
    est.iterations = it;
    est.residual = std::sqrt(res2);
    if (est.residual <= options.tolerance * std::max(1.0, std::abs(rho))) {
      est.value = std::max(0.0, rho);
      return est;
    }
    // v <- (A + I) v, normalised.
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      av[i] += v[i];
      norm2 += av[i] * av[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) v[i] = av[i] * inv;
  }
  throw ConvergenceError("lambda_max: power iteration did not converge in " +
                             std::to_string(options.max_iterations) + " iterations",
                         est.value);
}

double spectral_lambda(std::size_t n_nodes, double lambda, long k) {
  double sum = 0.0;
  double power = 1.0;
  for (long l = 1; l <= k; ++l) {
    power *= lambda;
    sum += static_cast<double>(n_nodes) * power;
  }
  return sum;
}

PathCountBound path_count_bound(const AggregatedGraph& graph, std::size_t max_length,
                                double lambda) {
  if (max_length < 1) throw ValidationError("path_count_bound: K must be >= 1");
  const std::size_t n = graph.n_nodes();
  PathCountBound out;
  out.lambda_max = lambda;
  out.n_nodes = n;

  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> walks(n, 1), next(n);
  bool saturated = false;
  double power = 1.0;
  for (std::size_t k = 1; k <= max_length; ++k) {
    // next = A * walks; walks[i] is the number of length-(k-1) walks from i.
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j : graph.neighbors(i)) {
        if (__builtin_add_overflow(acc, walks[j], &acc)) {
          acc = kMax;
          saturated = true;
        }
      }
      next[i] = acc;
    }
    walks.swap(next);
    WalkBound wb;
    wb.k = k;
    wb.saturated = saturated;
    for (std::uint64_t w : walks) {
      if (__builtin_add_overflow(wb.exact, w, &wb.exact)) {
        wb.exact = kMax;
        wb.saturated = saturated = true;
      }
    }
    power *= lambda;
    wb.spectral = static_cast<double>(n) * power;
    out.per_length.push_back(wb);

    if (wb.saturated || __builtin_add_overflow(out.exact_total, wb.exact, &out.exact_total)) {
      out.exact_total = kMax;
      out.exact_total_saturated = true;
    }
    out.spectral_total += wb.spectral;
  }
  return out;
}

PathCountBound path_count_bound(const AggregatedGraph& graph, std::size_t max_length) {
  return path_count_bound(graph, max_length, lambda_max(graph).value);
}

WindowLoad measure_window_load(std::span<const TimeStampedLink> links, Delta delta) {
  WindowLoad load;
  if (links.empty()) return load;
  check_chronological(links);

  // Runs of equal timestamps.
  for (std::size_t i = 0; i < links.size();) {
    std::size_t j = i;
    while (j < links.size() && links[j].timestamp == links[i].timestamp) ++j;
    load.m = std::max<std::uint64_t>(load.m, j - i);
    i = j;
  }

  if (delta.is_infinite()) {
    load.m_delta = load.window_peak = links.size();
    return load;
  }
  const Timestamp d = delta.value();
  std::size_t open_lo = 0, closed_lo = 0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    // Evaluate at the last link of each timestamp so all of its peers count.
    if (i + 1 < links.size() && links[i + 1].timestamp == links[i].timestamp) continue;
    const Timestamp t = links[i].timestamp;
    while (links[open_lo].timestamp <= t - d) ++open_lo;
    while (links[closed_lo].timestamp < t - d) ++closed_lo;
    load.m_delta = std::max<std::uint64_t>(load.m_delta, i + 1 - open_lo);
    load.window_peak = std::max<std::uint64_t>(load.window_peak, i + 1 - closed_lo);
  }
  return load;
}

ComplexityReport complexity_report(const TemporalLinkSequence& data, const CountParameters& params,
                                   PowerIterationOptions options) {
  ComplexityReport r;
  r.n_nodes = data.nodes.size();
  r.n_links = data.size();
  r.max_length = params.max_length;
  r.delta = params.delta;
  r.load = measure_window_load(data.links, params.delta);
  const AggregatedGraph g = aggregate(data);
  r.n_edges = g.n_edges();
  r.lambda_max = r.n_nodes == 0 ? 0.0 : lambda_max(g, options).value;
  r.bound = path_count_bound(g, params.max_length, r.lambda_max);

  const double n = static_cast<double>(r.n_links);
  const double v = static_cast<double>(r.n_nodes);
  const double k = static_cast<double>(r.max_length);
  const double md = static_cast<double>(r.load.m_delta);
  const double lam = r.lambda_max;
  const long kk = static_cast<long>(r.max_length);
  r.headline_cost = n * v * k * k * (md * std::pow(lam, kk - 2) + std::pow(lam, kk));
  const double d = params.delta.is_infinite() ? n : static_cast<double>(params.delta.value());
  r.detailed_cost = n * k *
                    (md * d * spectral_lambda(r.n_nodes, lam, kk - 2) +
                     spectral_lambda(r.n_nodes, lam, kk));
  return r;
}

}  // namespace causal
