#include <random>
#include <string>

#include "causal/analysis.hpp"

namespace causal {

TemporalLinkSequence synth_generate(const SynthParameters& params) {
  if (params.n_nodes == 0) throw ValidationError("synth: n_nodes must be positive");
  if (params.time_horizon < 1) throw ValidationError("synth: time_horizon must be positive");
  if (!(params.edge_density > 0.0 && params.edge_density <= 1.0)) {
    throw ValidationError("synth: edge_density must lie in (0, 1]");
  }

  TemporalLinkSequence seq;
  for (std::size_t i = 0; i < params.n_nodes; ++i) seq.nodes.intern(std::to_string(i));
  if (params.n_links == 0) return seq;

  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution keep(params.edge_density);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < params.n_nodes; ++i) {
    for (std::size_t j = 0; j < params.n_nodes; ++j) {
      if (i != j && keep(rng)) {
        edges.emplace_back(NodeId{static_cast<std::uint32_t>(i)},
                           NodeId{static_cast<std::uint32_t>(j)});
      }
    }
  }
  if (edges.empty()) throw ValidationError("synth: sampled graph has no edges");

  std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
  std::uniform_int_distribution<Timestamp> pick_time(1, params.time_horizon);
  seq.links.reserve(params.n_links);
  for (std::size_t n = 0; n < params.n_links; ++n) {
    const auto& [s, d] = edges[pick_edge(rng)];
    seq.links.push_back(TimeStampedLink{s, d, pick_time(rng)});
  }
  sort_chronologically(seq.links);
  return seq;
}

}  // namespace causal
