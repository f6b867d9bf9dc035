#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "causal/model.hpp"
#include "test_support.hpp"

namespace causal {
namespace {

using testing::fixture_path;

TEST(ParseLinkRecord, ParsesTabSeparatedRecord) {
  NodeTable table;
  auto link = parse_link_record("a\tb\t1", '\t', table);
  EXPECT_EQ(table.label(link.source), "a");
  EXPECT_EQ(table.label(link.target), "b");
  EXPECT_EQ(link.timestamp, 1);
}

TEST(ParseLinkRecord, AcceptsSelfLoopAtTimeZero) {
  NodeTable table;
  auto link = parse_link_record("x\tx\t0", '\t', table);
  EXPECT_EQ(link.source, link.target);
  EXPECT_EQ(link.timestamp, 0);
  EXPECT_EQ(table.size(), 1u);
}

TEST(ParseLinkRecord, MissingTimestampIsParseError) {
  NodeTable table;
  try {
    parse_link_record("a\tb", '\t', table, 7);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line_number(), 7u);
  }
}

TEST(ParseLinkRecord, NonIntegerTimestampIsParseError) {
  NodeTable table;
  EXPECT_THROW(parse_link_record("a\tb\t1.5", '\t', table), ParseError);
  EXPECT_THROW(parse_link_record("a\tb\tnoon", '\t', table), ParseError);
  EXPECT_THROW(parse_link_record("a\tb\t", '\t', table), ParseError);
}

TEST(ParseLinkRecord, NegativeTimestampIsValidationError) {
  NodeTable table;
  EXPECT_THROW(parse_link_record("a\tb\t-3", '\t', table), ValidationError);
}

TEST(ParseLinkRecord, CustomSeparatorAndExtraFields) {
  NodeTable table;
  auto link = parse_link_record("a,b,17,weight", ',', table);
  EXPECT_EQ(link.timestamp, 17);
  EXPECT_EQ(format_link_record(link, table, ','), "a,b,17");
}

TEST(ParseLinkRecord, EpochSecondsFitIn64Bits) {
  NodeTable table;
  auto link = parse_link_record("a\tb\t1700000000123", '\t', table);
  EXPECT_EQ(link.timestamp, 1700000000123LL);
}

TEST(ParseLinkRecord, RoundTripReproducesCanonicalForm) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 6), ch(0, 35);
  std::uniform_int_distribution<Timestamp> t(0, 1'000'000'000'000LL);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  for (int i = 0; i < 500; ++i) {
    auto label = [&] {
      std::string s;
      for (int k = len(rng); k > 0; --k) s += alphabet[ch(rng)];
      return s;
    };
    std::string line = label() + "\t" + label() + "\t" + std::to_string(t(rng));
    NodeTable table;
    EXPECT_EQ(format_link_record(parse_link_record(line, '\t', table), table, '\t'), line);
  }
}

TEST(NodeTable, InterningIsABijection) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 40);
  NodeTable table;
  std::set<std::string> distinct;
  for (int i = 0; i < 1000; ++i) {
    std::string label = "n" + std::to_string(pick(rng));
    distinct.insert(label);
    NodeId id = table.intern(label);
    EXPECT_EQ(table.label(id), label);
    EXPECT_EQ(table.intern(label), id);
  }
  EXPECT_EQ(table.size(), distinct.size());
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    EXPECT_EQ(table.find(table.label(NodeId{id}))->value, id);
  }
}

TEST(LoadSequence, ToyFixtureInFileOrder) {
  auto seq = load_sequence_file(fixture_path("toy.tsv"));
  ASSERT_EQ(seq.size(), 9u);
  std::vector<Timestamp> ts;
  for (const auto& l : seq.links) ts.push_back(l.timestamp);
  EXPECT_EQ(ts, (std::vector<Timestamp>{1, 2, 3, 3, 3, 4, 5, 6, 7}));
  EXPECT_EQ(seq.nodes.size(), 4u);
}

TEST(LoadSequence, EmptyStreamGivesEmptySequence) {
  std::istringstream in("");
  auto seq = load_sequence(in);
  EXPECT_EQ(seq.size(), 0u);
  EXPECT_EQ(seq.nodes.size(), 0u);
}

TEST(LoadSequence, OutOfOrderUnderRequireSortedNamesIndex) {
  std::istringstream in("a\tb\t5\nb\tc\t3\n");
  try {
    load_sequence(in);
    FAIL() << "expected OrderError";
  } catch (const OrderError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(LoadSequence, SortModeIsStable) {
  std::istringstream in("a\tb\t5\nb\tc\t3\nc\td\t5\nd\te\t3\n");
  ReaderOptions o;
  o.sort_mode = SortMode::sort;
  auto seq = load_sequence(in, o);
  std::vector<std::string> order;
  for (const auto& l : seq.links) order.push_back(seq.nodes.label(l.source));
  EXPECT_EQ(order, (std::vector<std::string>{"b", "d", "a", "c"}));
}

TEST(LoadSequence, SkipsCommentsBlankLinesAndHeader) {
  std::istringstream in("# exported\nsource\ttarget\ttime\n\na\tb\t1\r\n# mid\nb\tc\t2\n");
  auto seq = load_sequence(in);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_FALSE(seq.nodes.find("source"));
}

TEST(LoadSequence, OnlyFirstRecordMayBeAHeader) {
  std::istringstream in("a\tb\t1\nsource\ttarget\ttime\n");
  EXPECT_THROW(load_sequence(in), ParseError);
}

TEST(LoadSequence, ParseErrorCarriesLineNumber) {
  std::istringstream in("a\tb\t1\n# c\nb\tc\n");
  try {
    load_sequence(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line_number(), 3u);
  }
}

TEST(LoadSequence, DuplicateRecordsAreKept) {
  std::istringstream in("a\tb\t1\na\tb\t1\n");
  EXPECT_EQ(load_sequence(in).size(), 2u);
}

TEST(LoadSequence, SortModeAlwaysYieldsChronologicalOrder) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    std::uniform_int_distribution<int> t(0, 20), n(0, 5);
    std::ostringstream text;
    for (int i = 0; i < 40; ++i) text << n(rng) << '\t' << n(rng) << '\t' << t(rng) << '\n';
    std::istringstream in(text.str());
    ReaderOptions o;
    o.sort_mode = SortMode::sort;
    auto seq = load_sequence(in, o);
    EXPECT_NO_THROW(check_chronological(seq.links));
    EXPECT_EQ(seq.size(), 40u);
  }
}

TEST(PathFromLabels, BuildsPathOfLengthTwo) {
  NodeTable table;
  for (auto l : {"a", "b", "c"}) table.intern(l);
  Path p = path_from_labels({"a", "b", "c"}, table);
  EXPECT_EQ(p.length(), 2u);
  EXPECT_EQ(path_labels(p, table), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(PathFromLabels, SingleLabelIsRejected) {
  NodeTable table;
  table.intern("a");
  EXPECT_THROW(path_from_labels({"a"}, table), ValidationError);
}

TEST(PathFromLabels, SelfLoopPath) {
  NodeTable table;
  table.intern("a");
  EXPECT_EQ(path_from_labels({"a", "a"}, table).length(), 1u);
}

TEST(PathFromLabels, UnknownLabelStrictVersusIntern) {
  NodeTable table;
  table.intern("a");
  EXPECT_THROW(path_from_labels({"a", "zz"}, table), ValidationError);
  EXPECT_NO_THROW(path_from_labels({"a", "zz"}, table, LabelMode::intern));
  EXPECT_TRUE(table.find("zz"));
}

TEST(PathCountMap, NeverStoresZeroCounts) {
  NodeTable t;
  PathCountMap m;
  m.add(testing::P(t, {"a", "b"}), 0);
  EXPECT_TRUE(m.empty());
  EXPECT_EQ(m.get(testing::P(t, {"a", "b"})), 0u);
}

TEST(PathCountMap, OverflowIsAnError) {
  NodeTable t;
  PathCountMap m;
  m.add(testing::P(t, {"a", "b"}), std::numeric_limits<Count>::max());
  EXPECT_THROW(m.add(testing::P(t, {"a", "b"}), 1), OverflowError);
}

TEST(Delta, ParsesIntegersAndInfinity) {
  EXPECT_TRUE(Delta::parse("inf").is_infinite());
  EXPECT_EQ(Delta::parse("30").value(), 30);
  EXPECT_THROW(Delta::parse("0"), ValidationError);
  EXPECT_THROW(Delta::parse("-2"), ValidationError);
  EXPECT_THROW(Delta::parse("x"), ValidationError);
  EXPECT_THROW(CountParameters(Delta::finite(1), 0), ValidationError);
}

}  // namespace
}  // namespace causal
