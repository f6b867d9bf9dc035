#include "causal/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace causal {

namespace {

// Link indices grouped by source node, each group sorted by timestamp.
class SourceIndex {
 public:
  explicit SourceIndex(std::span<const TimeStampedLink> links) : links_(links) {
    for (std::size_t i = 0; i < links.size(); ++i) {
      auto s = links[i].source.value;
      if (s >= groups_.size()) groups_.resize(s + 1);
      groups_[s].push_back(i);
    }
    for (auto& g : groups_) {
      std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
        return links_[a].timestamp < links_[b].timestamp;
      });
    }
  }

  // Calls fn(j) for every link j that causally continues link i.
  template <typename Fn>
  void for_each_continuation(std::size_t i, const Delta& delta, Fn&& fn) const {
    const auto& from = links_[i];
    if (from.target.value >= groups_.size()) return;
    const auto& g = groups_[from.target.value];
    auto it = std::upper_bound(g.begin(), g.end(), from.timestamp,
                               [&](Timestamp t, std::size_t j) { return t < links_[j].timestamp; });
    for (; it != g.end(); ++it) {
      const Timestamp gap = links_[*it].timestamp - from.timestamp;
      if (!delta.is_infinite() && gap > delta.value()) break;
      fn(*it);
    }
  }

 private:
  std::span<const TimeStampedLink> links_;
  std::vector<std::vector<std::size_t>> groups_;
};

struct OccurrenceSeqHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

Path node_path(std::span<const TimeStampedLink> links, std::span<const std::size_t> seq) {
  std::vector<NodeId> nodes;
  nodes.reserve(seq.size() + 1);
  nodes.push_back(links[seq.front()].source);
  for (std::size_t idx : seq) nodes.push_back(links[idx].target);
  return Path(std::move(nodes));
}

}  // namespace

PathCountMap brute_force_count(std::span<const TimeStampedLink> links,
                               const CountParameters& params, EnumerationOptions options) {
  SourceIndex index(links);
  PathCountMap result;
  std::uint64_t enumerated = 0;
  std::vector<std::size_t> seq;
  seq.reserve(params.max_length);

  auto visit = [&](auto&& self, std::size_t i) -> void {
    seq.push_back(i);
    if (++enumerated > options.cap) {
      throw RefusalError("brute force: more than " + std::to_string(options.cap) +
                         " link sequences to enumerate");
    }
    options.deadline.tick("brute force");
    result.add(node_path(links, seq), 1);
    if (seq.size() < params.max_length) {
      index.for_each_continuation(i, params.delta, [&](std::size_t j) { self(self, j); });
    }
    seq.pop_back();
  };
  for (std::size_t i = 0; i < links.size(); ++i) visit(visit, i);
  return result;
}

PathCountMap brute_force_count(const TemporalLinkSequence& data, const CountParameters& params,
                               EnumerationOptions options) {
  return brute_force_count(std::span<const TimeStampedLink>(data.links), params,
                           std::move(options));
}

std::vector<std::size_t> TimeUnfoldedDag::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < node_count; ++i) {
    if (in_degree[i] == 0) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> TimeUnfoldedDag::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < node_count; ++i) {
    if (successors[i].empty()) out.push_back(i);
  }
  return out;
}

TimeUnfoldedDag build_time_unfolded_dag(std::span<const TimeStampedLink> links, Delta delta) {
  TimeUnfoldedDag dag;
  dag.node_count = links.size();
  dag.successors.resize(links.size());
  dag.in_degree.assign(links.size(), 0);
  SourceIndex index(links);
  for (std::size_t i = 0; i < links.size(); ++i) {
    index.for_each_continuation(i, delta, [&](std::size_t j) {
      dag.edges.emplace_back(i, j);
      dag.successors[i].push_back(j);
      ++dag.in_degree[j];
    });
  }
  return dag;
}

PathCountMap baseline_count(std::span<const TimeStampedLink> links, const CountParameters& params,
                            BaselineOptions options) {
  if (links.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("baseline: too many links");
  }
  const TimeUnfoldedDag dag = build_time_unfolded_dag(links, params.delta);
  const std::size_t max_k = params.max_length;
  const bool distinct = options.multiplicity == SubpathMultiplicity::distinct_instances;

  PathCountMap result;
  std::unordered_set<std::vector<std::uint32_t>, OccurrenceSeqHash> seen;
  std::uint64_t maximal_paths = 0;
  std::vector<std::uint32_t> key;

  auto count_subpaths = [&](std::span<const std::size_t> maximal) {
    for (std::size_t start = 0; start < maximal.size(); ++start) {
      const std::size_t longest = std::min(max_k, maximal.size() - start);
      for (std::size_t k = 1; k <= longest; ++k) {
        auto sub = maximal.subspan(start, k);
        options.deadline.tick("baseline");
        if (distinct) {
          key.assign(sub.begin(), sub.end());
          if (!seen.insert(key).second) continue;
        }
        result.add(node_path(links, sub), 1);
      }
    }
  };

  // Iterative DFS from each root; a frame is (node, next successor slot).
  std::vector<std::size_t> path;
  std::vector<std::size_t> next_child;
  for (std::size_t root : dag.roots()) {
    path.assign(1, root);
    next_child.assign(1, 0);
    while (!path.empty()) {
      const std::size_t node = path.back();
      const auto& succ = dag.successors[node];
      if (succ.empty()) {
        if (++maximal_paths > options.cap) {
          throw RefusalError("baseline: more than " + std::to_string(options.cap) +
                             " root-to-leaf paths to enumerate");
        }
        count_subpaths(path);
      }
      if (next_child.back() < succ.size()) {
        const std::size_t child = succ[next_child.back()++];
        options.deadline.tick("baseline");
        path.push_back(child);
        next_child.push_back(0);
      } else {
        path.pop_back();
        next_child.pop_back();
      }
    }
  }
  return result;
}

PathCountMap baseline_count(const TemporalLinkSequence& data, const CountParameters& params,
                            BaselineOptions options) {
  return baseline_count(std::span<const TimeStampedLink>(data.links), params, std::move(options));
}

}  // namespace causal
