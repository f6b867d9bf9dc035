#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "causal/counter.hpp"
#include "causal/oracle.hpp"
#include "test_support.hpp"

namespace causal {
namespace {

using testing::make_sequence;
using testing::P;

TEST(BruteForce, ToyMatchesGolden) {
  auto toy = testing::toy_sequence();
  EXPECT_EQ(brute_force_count(toy, CountParameters(Delta::finite(2), 2)),
            testing::toy_expected(toy.nodes));
}

TEST(BruteForce, GapLargerThanDeltaBreaksPath) {
  auto d = make_sequence({{"a", "b", 1}, {"b", "c", 3}});
  EXPECT_EQ(brute_force_count(d, CountParameters(Delta::finite(1), 2)),
            (PathCountMap{{P(d.nodes, {"a", "b"}), 1}, {P(d.nodes, {"b", "c"}), 1}}));
}

TEST(BruteForce, TwoContinuationsGiveTwoInstances) {
  auto d = make_sequence({{"a", "b", 1}, {"b", "c", 2}, {"b", "c", 3}});
  auto& t = d.nodes;
  EXPECT_EQ(brute_force_count(d, CountParameters(Delta::finite(2), 2)),
            (PathCountMap{{P(t, {"a", "b"}), 1}, {P(t, {"b", "c"}), 2}, {P(t, {"a", "b", "c"}), 2}}));
}

TEST(BruteForce, InputOrderDoesNotMatter) {
  auto sorted = make_sequence({{"a", "b", 1}, {"b", "c", 2}, {"c", "a", 3}});
  auto shuffled = make_sequence({{"c", "a", 3}, {"a", "b", 1}, {"b", "c", 2}});
  const CountParameters params(Delta::finite(1), 3);
  // Same labels interned in different order; compare through labels.
  auto a = brute_force_count(sorted, params);
  auto b = brute_force_count(shuffled, params);
  EXPECT_EQ(a.size(), b.size());
  for (const auto& [p, c] : a) {
    EXPECT_EQ(b.get(path_from_labels(path_labels(p, sorted.nodes), shuffled.nodes)), c);
  }
}

TEST(BruteForce, RefusesPastTheCap) {
  std::mt19937_64 rng(1);
  auto d = testing::random_instance(rng, {3, 300, 20, true});
  EnumerationOptions o;
  o.cap = 100;
  EXPECT_THROW(brute_force_count(d, CountParameters(Delta::infinite(), 4), o), RefusalError);
}

TEST(Dag, ToyContainsBothInstancesOfABC) {
  auto toy = testing::toy_sequence();
  auto dag = build_time_unfolded_dag(toy.links, Delta::finite(2));
  // Rows: 0 (a,b,1), 1 (a,b,2), 3 (b,c,3).
  auto has = [&](std::size_t i, std::size_t j) {
    return std::find(dag.edges.begin(), dag.edges.end(), std::pair{i, j}) != dag.edges.end();
  };
  EXPECT_TRUE(has(0, 3));
  EXPECT_TRUE(has(1, 3));
  EXPECT_FALSE(has(3, 4));
}

TEST(Dag, SingleLinkIsRootAndLeaf) {
  auto d = make_sequence({{"a", "b", 1}});
  auto dag = build_time_unfolded_dag(d.links, Delta::finite(1));
  EXPECT_EQ(dag.node_count, 1u);
  EXPECT_TRUE(dag.edges.empty());
  EXPECT_EQ(dag.roots(), std::vector<std::size_t>{0});
  EXPECT_EQ(dag.leaves(), std::vector<std::size_t>{0});
}

TEST(Dag, AdjacentChainHasOneEdge) {
  auto d = make_sequence({{"a", "b", 1}, {"b", "c", 2}});
  auto dag = build_time_unfolded_dag(d.links, Delta::finite(1));
  ASSERT_EQ(dag.edges.size(), 1u);
  EXPECT_EQ(dag.edges[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Dag, EdgesAreExactlyTheLengthTwoInstances) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 60; ++round) {
    auto d = testing::random_instance(rng, {6, 150, 60, true});
    const Delta delta = round % 5 == 0 ? Delta::infinite() : Delta::finite(1 + round % 5);
    auto dag = build_time_unfolded_dag(d.links, delta);
    for (auto [i, j] : dag.edges) {
      EXPECT_LT(d.links[i].timestamp, d.links[j].timestamp);
      EXPECT_EQ(d.links[i].target, d.links[j].source);
    }
    auto counts = brute_force_count(d, CountParameters(delta, 2));
    EXPECT_EQ(counts.total_of_length(2), dag.edges.size());
  }
}

TEST(Baseline, EmptyInput) {
  TemporalLinkSequence empty;
  EXPECT_TRUE(baseline_count(empty, CountParameters(Delta::finite(2), 3)).empty());
}

TEST(Baseline, ChainHasOneMaximalPath) {
  auto d = make_sequence({{"a", "b", 1}, {"b", "c", 2}, {"c", "d", 3}});
  auto& t = d.nodes;
  PathCountMap expected{{P(t, {"a", "b"}), 1},      {P(t, {"b", "c"}), 1},
                        {P(t, {"c", "d"}), 1},      {P(t, {"a", "b", "c"}), 1},
                        {P(t, {"b", "c", "d"}), 1}, {P(t, {"a", "b", "c", "d"}), 1}};
  const CountParameters params(Delta::finite(1), 3);
  EXPECT_EQ(baseline_count(d, params), expected);
  BaselineOptions literal;
  literal.multiplicity = SubpathMultiplicity::per_maximal_path;
  EXPECT_EQ(baseline_count(d, params, literal), expected);
}

TEST(Baseline, ToyMatchesBruteForce) {
  auto toy = testing::toy_sequence();
  const CountParameters params(Delta::finite(2), 2);
  EXPECT_EQ(baseline_count(toy, params), brute_force_count(toy, params));
}

TEST(Baseline, PerMaximalPathOverCountsSharedSubpaths) {
  // (b,c,3) lies on two maximal paths (from (a,b,1) and (a,b,2)).
  auto toy = testing::toy_sequence();
  const CountParameters params(Delta::finite(2), 2);
  BaselineOptions literal;
  literal.multiplicity = SubpathMultiplicity::per_maximal_path;
  auto over = baseline_count(toy, params, literal);
  auto exact = brute_force_count(toy, params);
  EXPECT_GT(over.get(P(toy.nodes, {"b", "c"})), exact.get(P(toy.nodes, {"b", "c"})));
  for (const auto& [p, c] : exact) EXPECT_GE(over.get(p), c);
}

TEST(Baseline, AgreesWithBruteForceOnRandomInstances) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 80; ++round) {
    auto d = testing::random_instance(rng, {7, 120, 80, true});
    const CountParameters params(Delta::finite(1 + round % 4), 1 + round % 4);
    EXPECT_EQ(baseline_count(d, params), brute_force_count(d, params)) << "round " << round;
  }
}

TEST(Baseline, RefusesPastTheCap) {
  std::mt19937_64 rng(4);
  auto d = testing::random_instance(rng, {2, 200, 30, true});
  BaselineOptions o;
  o.cap = 50;
  EXPECT_THROW(baseline_count(d, CountParameters(Delta::infinite(), 2), o), RefusalError);
}

TEST(Baseline, DeadlineRaisesTimeout) {
  std::mt19937_64 rng(4);
  auto d = testing::random_instance(rng, {2, 400, 30, true});
  BaselineOptions o;
  o.cap = ~0ULL;
  o.deadline = Deadline::after(std::chrono::milliseconds(1));
  EXPECT_THROW(baseline_count(d, CountParameters(Delta::infinite(), 3), o), TimeoutError);
}

}  // namespace
}  // namespace causal
