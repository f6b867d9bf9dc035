#include "causal/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace causal {

namespace {

std::optional<Timestamp> parse_integer(std::string_view text) {
  Timestamp value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

NodeId NodeTable::intern(std::string_view label) {
  if (auto it = ids_.find(label); it != ids_.end()) return NodeId{it->second};
  if (labels_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("too many distinct node labels");
  }
  auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.emplace_back(label);
  ids_.emplace(labels_.back(), id);
  return NodeId{id};
}

std::optional<NodeId> NodeTable::find(std::string_view label) const {
  if (auto it = ids_.find(label); it != ids_.end()) return NodeId{it->second};
  return std::nullopt;
}

const std::string& NodeTable::label(NodeId id) const {
  if (id.value >= labels_.size()) {
    throw ValidationError("unknown node id " + std::to_string(id.value));
  }
  return labels_[id.value];
}

Path::Path(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ValidationError("a path needs at least two nodes");
}

Path::Path(std::initializer_list<NodeId> nodes) : Path(std::vector<NodeId>(nodes)) {}

Path Path::extended(NodeId next) const {
  Path out;
  out.nodes_.reserve(nodes_.size() + 1);
  out.nodes_ = nodes_;
  out.nodes_.push_back(next);
  return out;
}

std::size_t Path::hash() const noexcept {
  // FNV-1a over the 32-bit ids.
  std::uint64_t h = 14695981039346656037ULL;
  for (NodeId n : nodes_) {
    h ^= n.value;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("path count overflowed 64 bits");
  }
  return out;
}

PathCountMap::PathCountMap(std::initializer_list<std::pair<Path, Count>> entries) {
  for (const auto& [p, c] : entries) add(p, c);
}

void PathCountMap::add(const Path& p, Count count) {
  if (count == 0) return;
  auto [it, inserted] = entries_.try_emplace(p, count);
  if (!inserted) it->second = checked_add(it->second, count);
}

void PathCountMap::add(Path&& p, Count count) {
  if (count == 0) return;
  auto [it, inserted] = entries_.try_emplace(std::move(p), count);
  if (!inserted) it->second = checked_add(it->second, count);
}

void PathCountMap::merge(const PathCountMap& other) {
  for (const auto& [p, c] : other.entries_) add(p, c);
}

Count PathCountMap::get(const Path& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? 0 : it->second;
}

Count PathCountMap::total() const {
  Count sum = 0;
  for (const auto& [p, c] : entries_) sum = checked_add(sum, c);
  return sum;
}

Count PathCountMap::total_of_length(std::size_t length) const {
  Count sum = 0;
  for (const auto& [p, c] : entries_) {
    if (p.length() == length) sum = checked_add(sum, c);
  }
  return sum;
}

std::vector<std::pair<Path, Count>> PathCountMap::sorted_entries() const {
  std::vector<std::pair<Path, Count>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.length() != b.first.length()) return a.first.length() < b.first.length();
    return a.first < b.first;
  });
  return out;
}

Delta Delta::finite(Timestamp value) {
  if (value < 1) throw ValidationError("delta must be >= 1, got " + std::to_string(value));
  return Delta(value);
}

std::string Delta::to_string() const {
  return is_infinite() ? "inf" : std::to_string(*value_);
}

Delta Delta::parse(std::string_view text) {
  if (text == "inf" || text == "infinite" || text == "INF") return infinite();
  auto v = parse_integer(text);
  if (!v) throw ValidationError("delta must be an integer or 'inf', got '" + std::string(text) + "'");
  return finite(*v);
}

CountParameters::CountParameters(Delta d, std::size_t k) : delta(d), max_length(k) {
  if (k < 1) throw ValidationError("maximum path length must be >= 1");
}

TimeStampedLink parse_link_record(std::string_view line, char separator, NodeTable& table,
                                  std::size_t line_number) {
  line = strip_cr(line);
  auto fields = split_fields(line, separator);
  if (fields.size() < 3) {
    throw ParseError("expected source, target and timestamp fields, found " +
                         std::to_string(fields.size()),
                     line_number);
  }
  auto t = parse_integer(fields[2]);
  if (!t) {
    throw ParseError("timestamp '" + std::string(fields[2]) + "' is not an integer",
                     line_number);
  }
  if (*t < 0) {
    std::string where = line_number ? "line " + std::to_string(line_number) + ": " : "";
    throw ValidationError(where + "negative timestamp " + std::to_string(*t));
  }
  TimeStampedLink link;
  link.source = table.intern(fields[0]);
  link.target = table.intern(fields[1]);
  link.timestamp = *t;
  return link;
}

std::string format_link_record(const TimeStampedLink& link, const NodeTable& table,
                               char separator) {
  std::string out = table.label(link.source);
  out += separator;
  out += table.label(link.target);
  out += separator;
  out += std::to_string(link.timestamp);
  return out;
}

LinkReader::LinkReader(std::istream& in, char separator, NodeTable& table)
    : in_(in), separator_(separator), table_(table) {}

std::optional<TimeStampedLink> LinkReader::next() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    std::string_view view = strip_cr(line_);
    if (view.empty() || view.front() == '#') continue;
    if (!seen_record_) {
      seen_record_ = true;
      auto fields = split_fields(view, separator_);
      if (fields.size() >= 3 && !parse_integer(fields[2])) {
        // Header line. A third field that merely starts like a number (e.g.
        // "1.5") is a malformed record, not a header.
        const auto& f = fields[2];
        bool looks_numeric = !f.empty() && (f.front() == '-' || (f.front() >= '0' && f.front() <= '9'));
        if (!looks_numeric) continue;
      }
    }
    return parse_link_record(view, separator_, table_, line_number_);
  }
  return std::nullopt;
}

void check_chronological(std::span<const TimeStampedLink> links) {
  for (std::size_t i = 1; i < links.size(); ++i) {
    if (links[i].timestamp < links[i - 1].timestamp) {
      throw OrderError(i, links[i].timestamp, links[i - 1].timestamp);
    }
  }
}

void sort_chronologically(std::vector<TimeStampedLink>& links) {
  std::stable_sort(links.begin(), links.end(),
                   [](const TimeStampedLink& a, const TimeStampedLink& b) {
                     return a.timestamp < b.timestamp;
                   });
}

TemporalLinkSequence load_sequence(std::istream& in, const ReaderOptions& options) {
  TemporalLinkSequence seq;
  LinkReader reader(in, options.separator, seq.nodes);
  while (auto link = reader.next()) {
    if (options.sort_mode == SortMode::require_sorted && !seq.links.empty() &&
        link->timestamp < seq.links.back().timestamp) {
      throw OrderError(seq.links.size(), link->timestamp, seq.links.back().timestamp);
    }
    seq.links.push_back(*link);
  }
  if (options.sort_mode == SortMode::sort) sort_chronologically(seq.links);
  return seq;
}

TemporalLinkSequence load_sequence_file(const std::string& path, const ReaderOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  return load_sequence(in, options);
}

Path path_from_labels(std::span<const std::string> labels, NodeTable& table, LabelMode mode) {
  if (labels.size() < 2) throw ValidationError("a path needs at least two node labels");
  std::vector<NodeId> ids;
  ids.reserve(labels.size());
  for (const auto& label : labels) {
    if (mode == LabelMode::intern) {
      ids.push_back(table.intern(label));
    } else if (auto id = table.find(label)) {
      ids.push_back(*id);
    } else {
      throw ValidationError("unknown node label '" + label + "'");
    }
  }
  return Path(std::move(ids));
}

Path path_from_labels(std::initializer_list<std::string_view> labels, NodeTable& table,
                      LabelMode mode) {
  std::vector<std::string> owned(labels.begin(), labels.end());
  return path_from_labels(std::span<const std::string>(owned), table, mode);
}

std::vector<std::string> path_labels(const Path& p, const NodeTable& table) {
  std::vector<std::string> out;
  out.reserve(p.nodes().size());
  for (NodeId n : p.nodes()) out.push_back(table.label(n));
  return out;
}

}  // namespace causal
