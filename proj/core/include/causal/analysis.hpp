#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "causal/model.hpp"

namespace causal {

// Undirected, unweighted union of all links. A self-loop (a, a) sets A_aa = 1.
class AggregatedGraph {
 public:
  AggregatedGraph() = default;
  explicit AggregatedGraph(std::size_t n_nodes);

  void add_edge(std::size_t i, std::size_t j);

  std::size_t n_nodes() const noexcept { return neighbors_.size(); }
  // Number of undirected edges, self-loops included.
  std::size_t n_edges() const noexcept { return n_edges_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  // Sorted neighbours of i (i itself if it has a self-loop).
  std::span<const std::size_t> neighbors(std::size_t i) const { return neighbors_[i]; }

  // y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::vector<std::vector<std::size_t>> neighbors_;
  std::size_t n_edges_ = 0;
};

// |V| is the node table size, so nodes without links still count.
AggregatedGraph aggregate(const TemporalLinkSequence& data);
AggregatedGraph aggregate(std::span<const TimeStampedLink> links, std::size_t n_nodes);

struct PowerIterationOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 10'000;
};

struct EigenEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Largest eigenvalue of the adjacency matrix by power iteration on A + I
// from the all-ones vector. The shift keeps bipartite graphs (eigenvalues
// +-lambda) from oscillating. Stops once ||A v - rho v|| <= tolerance *
// max(1, rho) for the unit iterate v and its Rayleigh quotient rho.
// Throws ConvergenceError past max_iterations.
EigenEstimate lambda_max(const AggregatedGraph& graph, PowerIterationOptions options = {});

struct WalkBound {
  std::size_t k = 0;
  // sum_ij (A^k)_ij; meaningless when saturated.
  std::uint64_t exact = 0;
  bool saturated = false;
  // |V| * lambda_max^k
  double spectral = 0.0;
};

struct PathCountBound {
  double lambda_max = 0.0;
  std::size_t n_nodes = 0;
  std::vector<WalkBound> per_length;  // k = 1..K
  std::uint64_t exact_total = 0;      // sum over k of exact
  bool exact_total_saturated = false;
  double spectral_total = 0.0;        // Lambda(K) bound: sum_k |V| lambda^k
};

// Exact walk counts by repeated integer A*v from the all-ones vector, next
// to the spectral bound |V| lambda^k, for k = 1..K.
PathCountBound path_count_bound(const AggregatedGraph& graph, std::size_t max_length,
                                double lambda);
PathCountBound path_count_bound(const AggregatedGraph& graph, std::size_t max_length);

// Sum of the spectral bound |V| lambda^l over l = 1..k (0 for k <= 0).
double spectral_lambda(std::size_t n_nodes, double lambda, long k);

struct WindowLoad {
  // Most links sharing one timestamp.
  std::uint64_t m = 0;
  // Most links with timestamps in (t - delta, t] for any processed t.
  // Equals N for infinite delta.
  std::uint64_t m_delta = 0;
  // Most links with timestamps in [t - delta, t]: the counter's window
  // occupancy including the link being processed.
  std::uint64_t window_peak = 0;
};

// Precondition: links chronological.
WindowLoad measure_window_load(std::span<const TimeStampedLink> links, Delta delta);

struct ComplexityReport {
  std::size_t n_nodes = 0;
  std::size_t n_links = 0;
  std::size_t n_edges = 0;
  std::size_t max_length = 0;
  Delta delta = Delta::infinite();
  double lambda_max = 0.0;
  WindowLoad load;
  PathCountBound bound;
  // N |V| K^2 [m_delta lambda^(K-2) + lambda^K]
  double headline_cost = 0.0;
  // N K [m_delta delta Lambda(K-2) + Lambda(K)]; delta taken as N for inf.
  double detailed_cost = 0.0;
};

ComplexityReport complexity_report(const TemporalLinkSequence& data, const CountParameters& params,
                                   PowerIterationOptions options = {});

struct SynthParameters {
  std::size_t n_nodes = 10;
  std::size_t n_links = 1000;
  Timestamp time_horizon = 500;
  double edge_density = 0.3;
  std::uint64_t seed = 1;
};

// Samples a directed aggregated graph (each ordered pair i != j present with
// probability edge_density), then n_links events on uniformly chosen edges
// at uniform times in 1..time_horizon, sorted by time. Deterministic per seed.
TemporalLinkSequence synth_generate(const SynthParameters& params);

}  // namespace causal
