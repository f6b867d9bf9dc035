#include "causal/counter.hpp"

#include <algorithm>
#include <limits>

namespace causal {

PathCountMap counter_sum(const PathCountMap& a, const PathCountMap& b) {
  PathCountMap out = a;
  out.merge(b);
  return out;
}

PathCountMap counter_extend(const PathCountMap& c, NodeId next, std::size_t max_length) {
  PathCountMap out;
  for (const auto& [p, count] : c) {
    if (p.length() < max_length) out.add(p.extended(next), count);
  }
  return out;
}

StreamingCounter::StreamingCounter(CountParameters params) : params_(params) {}

std::deque<std::uint64_t>& StreamingCounter::index_for(NodeId target) {
  if (target.value >= by_target_.size()) by_target_.resize(target.value + 1);
  return by_target_[target.value];
}

void StreamingCounter::evict_before(Timestamp t) {
  if (params_.delta.is_infinite()) return;
  // Keep t_j >= t - delta. Timestamps are non-negative, so t - delta cannot
  // underflow for any representable delta.
  const Timestamp horizon = t - params_.delta.value();
  while (!window_.empty() && window_.front().link.timestamp < horizon) {
    auto& slot = by_target_[window_.front().link.target.value];
    slot.pop_front();
    window_.pop_front();
    ++first_seq_;
  }
}

void StreamingCounter::push_entry(WindowEntry entry) {
  const std::uint64_t seq = first_seq_ + window_.size();
  index_for(entry.link.target).push_back(seq);
  window_.push_back(std::move(entry));
}

const PathCountMap& StreamingCounter::process_link(const TimeStampedLink& link) {
  if (link.timestamp < 0) throw ValidationError("negative timestamp");
  if (last_timestamp_ && link.timestamp < *last_timestamp_) {
    throw OrderError(links_processed_, link.timestamp, *last_timestamp_);
  }
  evict_before(link.timestamp);

  PathCountMap counts;
  counts.add(Path{link.source, link.target}, 1);

  if (link.source.value < by_target_.size()) {
    for (std::uint64_t seq : by_target_[link.source.value]) {
      const WindowEntry& entry = window_[seq - first_seq_];
      // Entries arrive in time order: the first one at t_j >= t ends the
      // continuable prefix.
      if (entry.link.timestamp >= link.timestamp) break;
      for (const auto& [p, c] : entry.counts) {
        if (p.length() < params_.max_length) counts.add(p.extended(link.target), c);
      }
    }
  }

  // Validate before committing so an overflow leaves the state as it was.
  // While the grand total fits in 64 bits no single entry can overflow.
  const Count added = counts.total();
  Count new_total = 0;
  if (__builtin_add_overflow(global_total_, added, &new_total)) {
    for (const auto& [p, c] : counts) (void)checked_add(global_.get(p), c);
    new_total = std::numeric_limits<Count>::max();
  }
  global_.merge(counts);
  global_total_ = new_total;

  ++links_processed_;
  last_timestamp_ = link.timestamp;
  push_entry(WindowEntry{link, std::move(counts)});
  peak_window_ = std::max(peak_window_, window_.size());
  return window_.back().counts;
}

PathCountMap StreamingCounter::take_result() && { return std::move(global_); }

PathCountMap count_causal_paths(std::span<const TimeStampedLink> links,
                                const CountParameters& params) {
  StreamingCounter counter(params);
  for (const auto& link : links) counter.process_link(link);
  return std::move(counter).take_result();
}

PathCountMap count_causal_paths(const TemporalLinkSequence& data, const CountParameters& params) {
  return count_causal_paths(std::span<const TimeStampedLink>(data.links), params);
}

}  // namespace causal
