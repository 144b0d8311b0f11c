#include "ukp/core.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <thread>

#include "oracles.hpp"

namespace ukp {
namespace {

using ::testing::HasSubstr;

const char* const kCounterexample = "n: 2\nc: 6\nbegin data\n1 1\n2 10\nend data\n";

TEST(ParseTest, CounterexampleInstance) {
  const Instance inst = parse_ukp_instance(kCounterexample);
  EXPECT_EQ(inst.capacity(), 6);
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0], (Item{1, 1}));
  EXPECT_EQ(inst[1], (Item{2, 10}));
}

TEST(ParseTest, SingleItemWithoutTrailingNewline) {
  const Instance inst = parse_ukp_instance("n: 1\nc: 5\nbegin data\n5 7\nend data");
  EXPECT_EQ(inst.capacity(), 5);
  EXPECT_EQ(inst[0], (Item{5, 7}));
}

TEST(ParseTest, ZeroProfitNamesTheLine) {
  try {
    parse_ukp_instance("n: 1\nc: 5\nbegin data\n3 0\nend data\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_THAT(e.what(), HasSubstr("non-positive profit at line 4"));
  }
}

TEST(ParseTest, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_ukp_instance("n: 2\nc: 6\nbegin data\n1 1\nend data\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance("n: 1\nc: 6\nbegin data\n1 x\nend data\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance("n: 1\nc: 6\nbegin data\n0 1\nend data\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance("n: 1\nc: 6\nbegin data\n1 1\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance("c: 6\nn: 1\nbegin data\n1 1\nend data\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance("n: 1\nc: 0\nbegin data\n1 1\nend data\n"), ParseError);
  EXPECT_THROW(parse_ukp_instance(""), ParseError);
}

TEST(ParseTest, SkipsCommentsAndBlankLines) {
  const Instance inst =
      parse_ukp_instance("# header\nn: 1\n\nc: 5\nbegin data\n# item\n5 7\nend data\n");
  EXPECT_EQ(inst.size(), 1u);
}

TEST(ParseTest, RoundTripIsStable) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = testing::random_instance(rng, 20, 1000, 1000, 100000);
    const std::string text = render_ukp_instance(inst);
    const Instance back = parse_ukp_instance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(render_ukp_instance(back), text);
  }
}

TEST(InstanceTest, ValidatesConstruction) {
  EXPECT_THROW(Instance(0, {{1, 1}}), InvalidInstance);
  EXPECT_THROW(Instance(5, {}), InvalidInstance);
  EXPECT_THROW(Instance(5, {{0, 1}}), InvalidInstance);
  EXPECT_THROW(Instance(5, {{1, -1}}), InvalidInstance);
}

TEST(InstanceTest, OverflowGuardRejectsHugeProducts) {
  const Weight big = Weight{1} << 40;
  EXPECT_THROW(Instance(big, {{1, Profit{1} << 30}}), InvalidInstance);
  EXPECT_NO_THROW(Instance(big, {{1, 1000}}));
}

TEST(InstanceTest, KeepsItemsHeavierThanCapacity) {
  const Instance inst(3, {{5, 100}, {1, 1}});
  EXPECT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.max_weight(), 5);
  EXPECT_EQ(inst.min_weight(), 1);
}

TEST(EvaluateTest, ThreeCopiesOfSecondItem) {
  const Instance inst = parse_ukp_instance(kCounterexample);
  Solution s;
  s.add(1, inst[1], 3);
  EXPECT_EQ(evaluate(s, inst), (Evaluation{6, 30, true}));
}

TEST(EvaluateTest, EmptySolution) {
  const Instance inst = parse_ukp_instance(kCounterexample);
  EXPECT_EQ(evaluate(Solution{}, inst), (Evaluation{0, 0, true}));
}

TEST(EvaluateTest, InfeasibleByOneUnit) {
  const Instance inst = parse_ukp_instance(kCounterexample);
  Solution s;
  s.add(0, inst[0], 7);
  EXPECT_EQ(evaluate(s, inst), (Evaluation{7, 7, false}));
}

TEST(EvaluateTest, UnknownIndexThrows) {
  const Instance inst = parse_ukp_instance(kCounterexample);
  Solution s;
  s.add(5, Item{1, 1});
  EXPECT_THROW(evaluate(s, inst), Error);
  EXPECT_THROW(Solution::from_counts({{9, 1}}, inst), Error);
}

TEST(SolutionTest, CachedTotalsMatchRecomputation) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Instance inst = testing::random_instance(rng, 10, 50, 50, 500);
    Solution s;
    std::uniform_int_distribution<std::size_t> pick(0, inst.size() - 1);
    for (int step = 0; step < 8; ++step) {
      const auto i = pick(rng);
      s.add(i, inst[i], 1 + step % 3);
      const Evaluation e = evaluate(s, inst);
      EXPECT_EQ(e.weight, s.total_weight());
      EXPECT_EQ(e.profit, s.total_profit());
    }
    EXPECT_EQ(Solution::from_counts(s.counts(), inst).total_profit(), s.total_profit());
  }
}

TEST(BestItemTest, ThreeItemSubset) {
  EXPECT_EQ(best_item(Instance(10, {{3, 2}, {5, 5}, {6, 1}})), 1u);
}

TEST(BestItemTest, EqualEfficiencyPrefersLowerWeight) {
  EXPECT_EQ(best_item(Instance(10, {{4, 4}, {2, 2}})), 1u);
  EXPECT_EQ(best_item(Instance(10, {{2, 2}, {4, 4}})), 0u);
}

TEST(BestItemTest, FullTiePrefersFirst) {
  EXPECT_EQ(best_item(Instance(10, {{2, 2}, {2, 2}})), 0u);
}

TEST(BestItemTest, InvariantUnderAppendingLessEfficientItems) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = testing::random_instance(rng, 8, 100, 100, 1000);
    const ItemIndex b = best_item(inst);
    std::vector<Item> items(inst.items().begin(), inst.items().end());
    // Strictly less efficient: profit/weight below the best one.
    const Item& best = inst[b];
    items.push_back({best.weight * 2 + 1, best.profit * 2});
    items.push_back({best.weight + 1, best.profit});
    EXPECT_EQ(best_item(Instance(inst.capacity(), items)), b);
  }
}

TEST(EfficiencyOrderTest, SortsByEfficiencyThenWeightThenIndex) {
  const std::vector<Item> items{{4, 4}, {3, 6}, {2, 2}, {2, 2}, {5, 1}};
  EXPECT_EQ(efficiency_order(items), (std::vector<ItemIndex>{1, 2, 3, 0, 4}));
}

TEST(CompareEfficiencyTest, IsExactForLargeValues) {
  const Profit p = (Profit{1} << 53) + 1;
  EXPECT_GT(compare_efficiency({1 << 20, p}, {1 << 20, p - 1}), 0);
  EXPECT_EQ(compare_efficiency({3, 6}, {1, 2}), 0);
}

TEST(DeadlineTest, DefaultIsUnlimited) {
  const Deadline d;
  EXPECT_TRUE(d.unlimited());
  EXPECT_FALSE(d.expired());
}

TEST(DeadlineTest, ExpiresAfterBudget) {
  const Deadline d(Seconds(0.001));
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  EXPECT_TRUE(d.expired());
  EXPECT_LE(d.remaining().count(), 0.0);
}

TEST(ChecksumTest, MatchesKnownFnv1aVectors) {
  EXPECT_EQ(fnv1a64(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xAF63DC4C8601EC8CULL);
}

}  // namespace
}  // namespace ukp
