#pragma once

#include <cstdint>
#include <list>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "causal/model.hpp"

namespace causal::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(CAUSALPATHS_FIXTURE_DIR) + "/" + name;
}

// Builds a sequence from (source, target, t) triples in the given order.
inline TemporalLinkSequence make_sequence(
    const std::vector<std::tuple<std::string, std::string, Timestamp>>& records) {
  TemporalLinkSequence seq;
  for (const auto& [s, d, t] : records) {
    seq.links.push_back(TimeStampedLink{seq.nodes.intern(s), seq.nodes.intern(d), t});
  }
  return seq;
}

inline TemporalLinkSequence toy_sequence() {
  return make_sequence({{"a", "b", 1},
                        {"a", "b", 2},
                        {"b", "a", 3},
                        {"b", "c", 3},
                        {"d", "c", 3},
                        {"d", "c", 4},
                        {"c", "d", 5},
                        {"c", "b", 6},
                        {"b", "c", 7}});
}

inline Path P(NodeTable& table, std::initializer_list<std::string_view> labels) {
  return path_from_labels(labels, table, LabelMode::intern);
}

// Expected toy output for delta = 2, K = 2: the per-row counters of the
// worked example summed.
inline PathCountMap toy_expected(NodeTable& t) {
  return PathCountMap{
      {P(t, {"a", "b"}), 2},      {P(t, {"b", "a"}), 1},      {P(t, {"b", "c"}), 2},
      {P(t, {"d", "c"}), 2},      {P(t, {"c", "d"}), 1},      {P(t, {"c", "b"}), 1},
      {P(t, {"a", "b", "a"}), 2}, {P(t, {"a", "b", "c"}), 2}, {P(t, {"b", "c", "d"}), 1},
      {P(t, {"d", "c", "d"}), 2}, {P(t, {"d", "c", "b"}), 1}, {P(t, {"c", "b", "c"}), 1},
  };
}

// The counting loop exactly as written in pseudocode: a plain list window
// scanned front to back, removing stale entries during the scan.
inline PathCountMap literal_window_count(const std::vector<TimeStampedLink>& data,
                                         const CountParameters& params) {
  struct Entry {
    TimeStampedLink link;
    PathCountMap counts;
  };
  PathCountMap c;
  std::list<Entry> window;
  for (const auto& [s, d, t] : data) {
    PathCountMap ci;
    ci.add(Path{s, d}, 1);
    for (auto it = window.begin(); it != window.end();) {
      const auto& [sj, dj, tj] = it->link;
      if (!params.delta.is_infinite() && tj < t - params.delta.value()) {
        it = window.erase(it);
        continue;
      }
      if (dj == s && t > tj) {
        for (const auto& [p, count] : it->counts) {
          if (p.length() < params.max_length) ci.add(p.extended(d), count);
        }
      }
      ++it;
    }
    c.merge(ci);
    window.push_back(Entry{TimeStampedLink{s, d, t}, std::move(ci)});
  }
  return c;
}

struct RandomInstanceSpec {
  std::size_t n_nodes = 6;
  std::size_t n_links = 50;
  Timestamp horizon = 40;
  bool allow_self_loops = true;
};

// Uniform random links over labels "v0".."v{n-1}", sorted by time.
inline TemporalLinkSequence random_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec) {
  TemporalLinkSequence seq;
  for (std::size_t i = 0; i < spec.n_nodes; ++i) seq.nodes.intern("v" + std::to_string(i));
  std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(spec.n_nodes - 1));
  std::uniform_int_distribution<Timestamp> time(0, spec.horizon);
  while (seq.links.size() < spec.n_links) {
    NodeId s{node(rng)}, d{node(rng)};
    if (!spec.allow_self_loops && s == d) continue;
    seq.links.push_back(TimeStampedLink{s, d, time(rng)});
  }
  sort_chronologically(seq.links);
  return seq;
}

}  // namespace causal::testing
