#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "causal/deadline.hpp"
#include "causal/model.hpp"

namespace causal {

struct EnumerationOptions {
  // Maximum number of link sequences (brute force) or root-to-leaf paths
  // (baseline) to enumerate before refusing.
  std::uint64_t cap = 10'000'000;
  Deadline deadline;
};

// Exact counts by enumerating every link sequence (e_1..e_k), k <= K, that
// satisfies the causal path conditions, with a depth-first search forward
// in time. Input order is irrelevant. Throws RefusalError past the cap.
PathCountMap brute_force_count(std::span<const TimeStampedLink> links,
                               const CountParameters& params,
                               EnumerationOptions options = {});
PathCountMap brute_force_count(const TemporalLinkSequence& data, const CountParameters& params,
                               EnumerationOptions options = {});

// DAG whose nodes are link occurrences (indices into the input) and whose
// edges (i, j) connect links that continue each other causally:
// target_i == source_j and t_i < t_j <= t_i + delta.
struct TimeUnfoldedDag {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> successors;
  std::vector<std::size_t> in_degree;

  std::vector<std::size_t> roots() const;
  std::vector<std::size_t> leaves() const;
};

TimeUnfoldedDag build_time_unfolded_dag(std::span<const TimeStampedLink> links, Delta delta);

// How the baseline counts a sub-path instance that lies on several maximal
// root-to-leaf paths.
enum class SubpathMultiplicity {
  // Each distinct link sequence counts once. Gives exact C(p).
  distinct_instances,
  // Counted once per maximal path containing it (over-counts shared prefixes
  // and suffixes).
  per_maximal_path,
};

struct BaselineOptions : EnumerationOptions {
  SubpathMultiplicity multiplicity = SubpathMultiplicity::distinct_instances;
};

// Three-step DAG baseline: build the time-unfolded DAG, enumerate every
// root-to-leaf path, then count the sub-paths of length <= K contained in
// them. Cost grows with the number of maximal paths, not with N alone.
PathCountMap baseline_count(std::span<const TimeStampedLink> links, const CountParameters& params,
                            BaselineOptions options = {});
PathCountMap baseline_count(const TemporalLinkSequence& data, const CountParameters& params,
                            BaselineOptions options = {});

}  // namespace causal
