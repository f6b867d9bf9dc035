#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "causal/errors.hpp"

namespace causal {

using Timestamp = std::int64_t;
using Count = std::uint64_t;

// Dense identifier for an interned node label.
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

// Bijection between node labels and dense ids 0..size()-1.
class NodeTable {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> ids_;
  std::vector<std::string> labels_;
};

struct TimeStampedLink {
  NodeId source;
  NodeId target;
  Timestamp timestamp = 0;

  friend bool operator==(const TimeStampedLink&, const TimeStampedLink&) = default;
};

// Chronologically ordered links together with the table that names their nodes.
struct TemporalLinkSequence {
  std::vector<TimeStampedLink> links;
  NodeTable nodes;

  std::size_t size() const noexcept { return links.size(); }
  bool empty() const noexcept { return links.empty(); }
};

// Node sequence <n0 n1 ... nl> with l >= 1 traversed links.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<NodeId> nodes);
  Path(std::initializer_list<NodeId> nodes);

  // Number of traversed links.
  std::size_t length() const noexcept { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  NodeId front() const { return nodes_.front(); }
  NodeId back() const { return nodes_.back(); }

  // p (+) n
  Path extended(NodeId next) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::vector<NodeId> nodes_;
};

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept { return p.hash(); }
};

// Path -> instance count. Zero counts are never stored.
class PathCountMap {
 public:
  using Storage = std::unordered_map<Path, Count, PathHash>;
  using const_iterator = Storage::const_iterator;

  PathCountMap() = default;
  PathCountMap(std::initializer_list<std::pair<Path, Count>> entries);

  // Adds count to p. Throws OverflowError instead of wrapping.
  void add(const Path& p, Count count);
  void add(Path&& p, Count count);
  // this += other, pointwise.
  void merge(const PathCountMap& other);

  Count get(const Path& p) const;
  bool contains(const Path& p) const { return entries_.contains(p); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  void reserve(std::size_t n) { entries_.reserve(n); }
  void clear() noexcept { entries_.clear(); }

  // Sum over all counts, checked.
  Count total() const;
  // Sum over counts of paths with exactly the given length, checked.
  Count total_of_length(std::size_t length) const;

  // Entries ordered by (length, node ids).
  std::vector<std::pair<Path, Count>> sorted_entries() const;

  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  friend bool operator==(const PathCountMap& a, const PathCountMap& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Storage entries_;
};

// Checked a + b.
Count checked_add(Count a, Count b);

// Maximum time difference. An empty optional is the infinite case.
class Delta {
 public:
  static Delta infinite() { return Delta{}; }
  static Delta finite(Timestamp value);

  bool is_infinite() const noexcept { return !value_.has_value(); }
  // Precondition: !is_infinite().
  Timestamp value() const { return *value_; }

  std::string to_string() const;
  // Accepts a positive integer or "inf".
  static Delta parse(std::string_view text);

  friend bool operator==(const Delta&, const Delta&) = default;

 private:
  Delta() = default;
  explicit Delta(Timestamp v) : value_(v) {}
  std::optional<Timestamp> value_;
};

struct CountParameters {
  Delta delta = Delta::infinite();
  std::size_t max_length = 1;

  CountParameters() = default;
  CountParameters(Delta d, std::size_t k);
};

enum class SortMode { require_sorted, sort };

struct ReaderOptions {
  char separator = '\t';
  SortMode sort_mode = SortMode::require_sorted;
};

// Parses "source<SEP>target<SEP>timestamp[<SEP>...]" and interns both labels.
// Fields beyond the third are ignored.
TimeStampedLink parse_link_record(std::string_view line, char separator, NodeTable& table,
                                  std::size_t line_number = 0);

// Canonical text form of a link: "source<SEP>target<SEP>timestamp".
std::string format_link_record(const TimeStampedLink& link, const NodeTable& table,
                               char separator);

// Pull-based reader over an edge-list stream. Skips blank lines, '#'
// comments, and a header line (first record whose third field is not an
// integer). Does not check ordering.
class LinkReader {
 public:
  LinkReader(std::istream& in, char separator, NodeTable& table);

  std::optional<TimeStampedLink> next();
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::istream& in_;
  char separator_;
  NodeTable& table_;
  std::size_t line_number_ = 0;
  bool seen_record_ = false;
  std::string line_;
};

TemporalLinkSequence load_sequence(std::istream& in, const ReaderOptions& options = {});
TemporalLinkSequence load_sequence_file(const std::string& path,
                                        const ReaderOptions& options = {});

// Throws OrderError at the first link whose timestamp decreases.
void check_chronological(std::span<const TimeStampedLink> links);

// Stable sort by timestamp.
void sort_chronologically(std::vector<TimeStampedLink>& links);

enum class LabelMode { strict, intern };

Path path_from_labels(std::span<const std::string> labels, NodeTable& table,
                      LabelMode mode = LabelMode::strict);
Path path_from_labels(std::initializer_list<std::string_view> labels, NodeTable& table,
                      LabelMode mode = LabelMode::strict);

std::vector<std::string> path_labels(const Path& p, const NodeTable& table);

}  // namespace causal
