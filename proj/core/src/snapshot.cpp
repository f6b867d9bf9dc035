// Text snapshot of a StreamingCounter.
//
//   causal-counter-state 1
//   delta <int|inf>
//   max_length <K>
//   links_processed <n>
//   last_timestamp <t|none>
//   peak_window <n>
//   window <entries>
//   entry <source> <target> <timestamp> <paths>
//   <count> <n0> <n1> ... <nl>          (one line per path of the entry)
//   global <paths>
//   <count> <n0> <n1> ... <nl>
//
// Node ids are the dense integers of the NodeTable used to feed the counter.

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "causal/counter.hpp"

namespace causal {

namespace {

constexpr const char* kMagic = "causal-counter-state";
constexpr int kVersion = 1;

void write_map(std::ostream& out, const PathCountMap& map) {
  for (const auto& [p, c] : map.sorted_entries()) {
    out << c;
    for (NodeId n : p.nodes()) out << ' ' << n.value;
    out << '\n';
  }
}

class SnapshotReader {
 public:
  explicit SnapshotReader(std::istream& in) : in_(in) {}

  std::istringstream line() {
    std::string text;
    if (!std::getline(in_, text)) fail("unexpected end of snapshot");
    ++line_;
    return std::istringstream(text);
  }

  std::string expect_key(std::istringstream& ls, const std::string& key) {
    std::string word;
    ls >> word;
    if (word != key) fail("expected '" + key + "', found '" + word + "'");
    std::string value;
    ls >> value;
    if (value.empty()) fail("missing value for '" + key + "'");
    return value;
  }

  template <typename T>
  T number(const std::string& text) {
    std::istringstream ss(text);
    T v{};
    if (!(ss >> v) || !ss.eof()) fail("bad number '" + text + "'");
    return v;
  }

  PathCountMap read_map(std::size_t paths) {
    PathCountMap map;
    for (std::size_t i = 0; i < paths; ++i) {
      auto ls = line();
      Count c = 0;
      if (!(ls >> c) || c == 0) fail("bad path count");
      std::vector<NodeId> nodes;
      std::uint32_t id = 0;
      while (ls >> id) nodes.push_back(NodeId{id});
      if (nodes.size() < 2) fail("path with fewer than two nodes");
      map.add(Path(std::move(nodes)), c);
    }
    return map;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("snapshot: " + what, line_);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

void StreamingCounter::save(std::ostream& out) const {
  out << kMagic << ' ' << kVersion << '\n';
  out << "delta " << params_.delta.to_string() << '\n';
  out << "max_length " << params_.max_length << '\n';
  out << "links_processed " << links_processed_ << '\n';
  out << "last_timestamp "
      << (last_timestamp_ ? std::to_string(*last_timestamp_) : std::string("none")) << '\n';
  out << "peak_window " << peak_window_ << '\n';
  out << "window " << window_.size() << '\n';
  for (const auto& e : window_) {
    out << "entry " << e.link.source.value << ' ' << e.link.target.value << ' '
        << e.link.timestamp << ' ' << e.counts.size() << '\n';
    write_map(out, e.counts);
  }
  out << "global " << global_.size() << '\n';
  write_map(out, global_);
}

StreamingCounter StreamingCounter::restore(std::istream& in) {
  SnapshotReader r(in);
  {
    auto ls = r.line();
    std::string magic;
    int version = 0;
    ls >> magic >> version;
    if (magic != kMagic) r.fail("not a counter snapshot");
    if (version != kVersion) r.fail("unsupported snapshot version " + std::to_string(version));
  }
  auto ls = r.line();
  Delta delta = Delta::parse(r.expect_key(ls, "delta"));
  ls = r.line();
  auto k = r.number<std::size_t>(r.expect_key(ls, "max_length"));
  StreamingCounter counter(CountParameters(delta, k));

  ls = r.line();
  counter.links_processed_ = r.number<std::uint64_t>(r.expect_key(ls, "links_processed"));
  ls = r.line();
  if (auto t = r.expect_key(ls, "last_timestamp"); t != "none") {
    counter.last_timestamp_ = r.number<Timestamp>(t);
  }
  ls = r.line();
  counter.peak_window_ = r.number<std::size_t>(r.expect_key(ls, "peak_window"));
  ls = r.line();
  auto entries = r.number<std::size_t>(r.expect_key(ls, "window"));
  for (std::size_t i = 0; i < entries; ++i) {
    auto el = r.line();
    std::string tag;
    std::uint32_t s = 0, d = 0;
    Timestamp t = 0;
    std::size_t paths = 0;
    if (!(el >> tag >> s >> d >> t >> paths) || tag != "entry") r.fail("bad window entry");
    WindowEntry entry{TimeStampedLink{NodeId{s}, NodeId{d}, t}, r.read_map(paths)};
    if (!counter.window_.empty() && t < counter.window_.back().link.timestamp) {
      r.fail("window entries out of chronological order");
    }
    counter.push_entry(std::move(entry));
  }
  ls = r.line();
  auto global = r.number<std::size_t>(r.expect_key(ls, "global"));
  counter.global_ = r.read_map(global);

  Count total = 0;
  for (const auto& [p, c] : counter.global_) {
    if (__builtin_add_overflow(total, c, &total)) {
      total = std::numeric_limits<Count>::max();
      break;
    }
  }
  counter.global_total_ = total;
  return counter;
}

}  // namespace causal
