#include "causal/output.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace causal {

std::string escape_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  for (char ch : label) {
    if (ch == '\\' || ch == ',') out += '\\';
    out += ch;
  }
  return out;
}

std::vector<std::string> split_escaped_path(std::string_view joined) {
  std::vector<std::string> labels(1);
  for (std::size_t i = 0; i < joined.size(); ++i) {
    const char ch = joined[i];
    if (ch == '\\' && i + 1 < joined.size()) {
      labels.back() += joined[++i];
    } else if (ch == ',') {
      labels.emplace_back();
    } else {
      labels.back() += ch;
    }
  }
  return labels;
}

std::string format_path(const Path& p, const NodeTable& table) {
  std::string out;
  bool first = true;
  for (NodeId n : p.nodes()) {
    if (!first) out += ',';
    first = false;
    out += escape_label(table.label(n));
  }
  return out;
}

std::vector<OutputRecord> output_records(const PathCountMap& counts, const NodeTable& table) {
  struct Keyed {
    std::vector<std::string_view> labels;
    const Path* path;
    Count count;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(counts.size());
  for (const auto& [p, c] : counts) {
    Keyed k{{}, &p, c};
    for (NodeId n : p.nodes()) k.labels.emplace_back(table.label(n));
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
    return a.labels < b.labels;
  });
  std::vector<OutputRecord> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) {
    out.push_back(OutputRecord{format_path(*k.path, table), k.path->length(), k.count});
  }
  return out;
}

void write_path_counts(std::ostream& out, const PathCountMap& counts, const NodeTable& table) {
  for (const auto& r : output_records(counts, table)) {
    out << r.path << '\t' << r.length << '\t' << r.count << '\n';
  }
}

PathCountMap read_path_counts(std::istream& in, NodeTable& table) {
  PathCountMap map;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected path, length and count", line_number);
    auto labels = split_escaped_path(std::string_view(line).substr(0, t1));
    Count count = 0;
    std::string_view cs = std::string_view(line).substr(t2 + 1);
    auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), count);
    if (ec != std::errc{} || ptr != cs.data() + cs.size()) {
      throw ParseError("bad count field", line_number);
    }
    map.add(path_from_labels(labels, table, LabelMode::intern), count);
  }
  return map;
}

}  // namespace causal
