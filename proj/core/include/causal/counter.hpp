#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <vector>

#include "causal/model.hpp"

namespace causal {

// a + b, pointwise.
PathCountMap counter_sum(const PathCountMap& a, const PathCountMap& b);

// ext_K(c, n): every path p in c with length < max_length becomes p (+) n
// with the same count. Longer paths are dropped.
PathCountMap counter_extend(const PathCountMap& c, NodeId next, std::size_t max_length);

// A processed link together with the counts of all causal paths ending in it.
struct WindowEntry {
  TimeStampedLink link;
  PathCountMap counts;
};

// Single-pass causal path counter over a chronological link stream.
//
// The window holds every processed link with t_j >= t - delta, in arrival
// order. Because arrival order is chronological, eviction only ever removes
// a prefix of the window. A per-target index lists the window entries whose
// link ends at a given node, so a new link (s, d, t) only visits the entries
// it can continue (d_j == s).
//
// Not thread-safe; one instance consumes one stream.
class StreamingCounter {
 public:
  explicit StreamingCounter(CountParameters params);

  // Processes the next link and returns the counts of the causal paths
  // ending with it. Throws OrderError (state unchanged) if the link is
  // earlier than the previous one, OverflowError on count overflow.
  const PathCountMap& process_link(const TimeStampedLink& link);

  const PathCountMap& result() const noexcept { return global_; }
  PathCountMap take_result() &&;

  const CountParameters& params() const noexcept { return params_; }
  std::uint64_t links_processed() const noexcept { return links_processed_; }
  std::optional<Timestamp> last_timestamp() const noexcept { return last_timestamp_; }
  std::size_t window_size() const noexcept { return window_.size(); }
  // Largest window size observed, counting the link being processed.
  std::size_t peak_window_size() const noexcept { return peak_window_; }
  const std::deque<WindowEntry>& window() const noexcept { return window_; }

  // Versioned text snapshot of the window and global counts. Node ids are
  // written as integers; the node table is not part of the snapshot.
  void save(std::ostream& out) const;
  static StreamingCounter restore(std::istream& in);

 private:
  void evict_before(Timestamp t);
  void push_entry(WindowEntry entry);
  std::deque<std::uint64_t>& index_for(NodeId target);

  CountParameters params_;
  std::deque<WindowEntry> window_;
  // Sequence number of window_.front().
  std::uint64_t first_seq_ = 0;
  std::vector<std::deque<std::uint64_t>> by_target_;
  PathCountMap global_;
  std::uint64_t links_processed_ = 0;
  std::optional<Timestamp> last_timestamp_;
  std::size_t peak_window_ = 0;
  // Saturating sum of all counts in global_.
  Count global_total_ = 0;
};

// Counts all causal paths of length <= K in a chronological sequence.
PathCountMap count_causal_paths(const TemporalLinkSequence& data, const CountParameters& params);
PathCountMap count_causal_paths(std::span<const TimeStampedLink> links,
                                const CountParameters& params);

}  // namespace causal
