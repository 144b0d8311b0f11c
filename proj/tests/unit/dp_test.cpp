#include "ukp/dp.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ukp/dominance.hpp"
#include "ukp/gen.hpp"

namespace ukp {
namespace {

Instance counterexample(Weight c = 6) { return Instance(c, {{1, 1}, {2, 10}}); }

const std::vector<Item> kSevenItems{{3, 2},   {5, 5},   {6, 1},  {12, 9},
                                   {14, 11}, {16, 13}, {17, 19}};

TEST(NaiveDpTest, CounterexampleValues) {
  EXPECT_EQ(solve_naive_dp(counterexample()).optimal_value, 30);
  EXPECT_EQ(solve_naive_dp(counterexample(3)).optimal_value, 11);
}

TEST(NaiveDpTest, NothingFits) {
  const auto r = solve_naive_dp(Instance(4, {{5, 9}, {7, 3}}));
  EXPECT_EQ(r.optimal_value, 0);
  EXPECT_TRUE(r.solution.empty());
}

TEST(NaiveDpTest, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = testing::random_instance(rng, 5, 20, 30, 60);
    const auto r = solve_naive_dp(inst);
    ASSERT_EQ(r.optimal_value, testing::brute_force_opt(inst)) << render_ukp_instance(inst);
    const Evaluation e = evaluate(r.solution, inst);
    EXPECT_TRUE(e.feasible);
    EXPECT_EQ(e.profit, r.optimal_value);
  }
}

TEST(NaiveDpTest, ScansEveryCapacity) {
  const auto r = solve_naive_dp(Instance(100, {{3, 4}, {7, 9}}));
  EXPECT_EQ(r.stats.at("inner_iterations"), 200);
}

TEST(NaiveDpTest, ReportsTimeout) {
  std::vector<Item> items;
  for (Weight w = 1; w <= 300; ++w) items.push_back({w, w + 1});
  const auto r = solve_naive_dp(Instance(5'000'000, items), Deadline(Seconds(0.001)));
  EXPECT_EQ(r.terminated_by, Termination::timeout);
}

TEST(StepOffTest, CounterexampleForEverySolver) {
  for (const auto& r : {solve_oso(counterexample()), solve_tso(counterexample()),
                        solve_gfdp(counterexample())}) {
    EXPECT_EQ(r.optimal_value, 30);
    EXPECT_EQ(r.solution.count(1), 3);
    EXPECT_EQ(r.solution.count(0), 0);
  }
}

TEST(StepOffTest, RejectsCapacityBeyondDenseLimit) {
  const Instance inst(kMaxDenseCapacity + 1, {{kMaxDenseCapacity, 1}});
  EXPECT_THROW(solve_oso(inst), InvalidInstance);
  EXPECT_THROW(solve_naive_dp(inst), InvalidInstance);
}

TEST(StepOffTest, OracleEquivalenceOnRandomInstances) {
  std::mt19937_64 rng(202);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = testing::random_instance(rng, 40, 300, 400, 3000);
    const Profit expected = solve_naive_dp(inst).optimal_value;
    for (const auto& r : {solve_oso(inst), solve_tso(inst), solve_gfdp(inst)}) {
      ASSERT_EQ(r.terminated_by, Termination::optimal);
      ASSERT_EQ(r.optimal_value, expected) << render_ukp_instance(inst);
      const Evaluation e = evaluate(r.solution, inst);
      ASSERT_TRUE(e.feasible);
      ASSERT_EQ(e.profit, expected);
    }
  }
}

TEST(StepOffTest, OracleEquivalenceWithSharedBestEfficiency) {
  std::mt19937_64 rng(303);
  for (int k = 0; k < 100; ++k) {
    Instance base = testing::random_instance(rng, 10, 50, 50, 2000);
    std::vector<Item> items(base.items().begin(), base.items().end());
    const Item b = base[best_item(base)];
    items.push_back({b.weight * 3, b.profit * 3});
    const Instance inst(base.capacity(), items);
    const Profit expected = solve_naive_dp(inst).optimal_value;
    EXPECT_EQ(solve_oso(inst).optimal_value, expected);
    EXPECT_EQ(solve_tso(inst).optimal_value, expected);
    EXPECT_EQ(solve_gfdp(inst).optimal_value, expected);
  }
}

TEST(BacktrackTest, CounterexampleAtFullCapacity) {
  const Instance inst = counterexample();
  const auto [outcome, state] = solve_oso_with_state(inst);
  const Solution s = backtrack(state, inst, 6);
  EXPECT_EQ(s.counts(), (std::map<ItemIndex, std::int64_t>{{1, 3}}));
}

TEST(BacktrackTest, SeededSingleItem) {
  const Instance inst(20, {{7, 3}, {5, 5}, {9, 1}});
  const auto [outcome, state] = solve_oso_with_state(inst);
  EXPECT_EQ(backtrack(state, inst, 5).counts(), (std::map<ItemIndex, std::int64_t>{{1, 1}}));
  EXPECT_EQ(backtrack(state, inst, 7).counts(), (std::map<ItemIndex, std::int64_t>{{0, 1}}));
}

TEST(BacktrackTest, EveryRetainedStateIsConsistent) {
  std::mt19937_64 rng(404);
  for (int k = 0; k < 50; ++k) {
    const Instance inst = testing::random_instance(rng, 15, 100, 100, 1500);
    const auto [outcome, state] = solve_oso_with_state(inst);
    for (Weight y = 1; y <= inst.capacity(); ++y) {
      if (state.g[static_cast<std::size_t>(y)] <= 0) continue;
      const Solution s = backtrack(state, inst, y);
      const Evaluation e = evaluate(s, inst);
      ASSERT_EQ(e.weight, y);
      ASSERT_EQ(e.profit, state.g[static_cast<std::size_t>(y)]);
      ASSERT_TRUE(e.feasible);
    }
  }
}

TEST(BacktrackTest, EmptySlotThrows) {
  const Instance inst(10, {{4, 5}});
  const auto [outcome, state] = solve_oso_with_state(inst);
  EXPECT_THROW(backtrack(state, inst, 3), Error);
}

TEST(BacktrackTest, CorruptedArraysAreAnInternalError) {
  const Instance inst(10, {{4, 5}, {3, 2}});
  auto [outcome, state] = solve_oso_with_state(inst);
  state.g[8] += 1;
  EXPECT_THROW(backtrack(state, inst, 8), std::logic_error);
}

TEST(TiebreakTest, ValueInvariantAndNeverMoreWork) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance ss = gen_subset_sum(50, {100, 2000, 20000, 40000}, seed);
    const Instance sc = gen_strong_corr(50, 5, {100, 1000, 20000, 40000}, seed);
    for (const Instance* inst : {&ss, &sc}) {
      const auto with = solve_oso(*inst);
      const auto without = solve_oso(*inst, {}, OsoOptions{false});
      EXPECT_EQ(with.optimal_value, without.optimal_value);
      EXPECT_LE(with.stats.at("inner_iterations"), without.stats.at("inner_iterations"));
    }
  }
}

TEST(TiebreakTest, ValueInvariantOnRandomInstances) {
  std::mt19937_64 rng(505);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = testing::random_instance(rng, 20, 100, 100, 2000);
    EXPECT_EQ(solve_oso(inst).optimal_value,
              solve_oso(inst, {}, OsoOptions{false}).optimal_value);
  }
}

TEST(PartialDominanceTest, SkippedStatesAreDominatedByLighterRetainedStates) {
  std::mt19937_64 rng(606);
  for (int k = 0; k < 30; ++k) {
    const Instance inst = testing::random_instance(rng, 10, 60, 60, 600);
    const auto [outcome, state] = solve_oso_with_state(inst);
    Profit running = 0;
    Weight running_at = 0;
    for (Weight y = 1; y <= inst.capacity(); ++y) {
      const Profit gy = state.g[static_cast<std::size_t>(y)];
      if (gy <= 0) continue;
      if (gy <= running) {
        const Solution skipped = backtrack(state, inst, y);
        const Solution kept = backtrack(state, inst, running_at);
        EXPECT_TRUE(dominates_solution(kept, skipped));
      } else {
        running = gy;
        running_at = y;
      }
    }
  }
}

TEST(WorstCaseTest, LightInefficientItemDrivesQuadraticWork) {
  // Least efficient item has weight 1; the second lowest weight is near c.
  const Weight c = 2000;
  std::vector<Item> items{{1, 1}};
  for (Weight w = 1900; w < 1940; ++w) items.push_back({w, 2 * w});
  const Instance inst(c, items);
  const auto r = solve_oso(inst);
  const auto n = static_cast<std::int64_t>(inst.size());
  EXPECT_GE(r.stats.at("inner_iterations"), n * (1900 - 1) / 2);
  EXPECT_EQ(r.optimal_value, solve_naive_dp(inst).optimal_value);
}

TEST(TsoTest, StopsEarlyOnTwoItemInstance) {
  const Instance inst(1'000'000, {{5, 5}, {3, 2}});
  const auto r = solve_tso(inst);
  EXPECT_LT(r.stats.at("capacities_scanned"), 1'000'000);
  EXPECT_EQ(r.optimal_value, solve_naive_dp(inst).optimal_value);
  const auto pb = periodicity_bound(inst);
  EXPECT_EQ(r.optimal_value, solve_naive_dp(inst.with_capacity(pb.reduced_capacity)).optimal_value +
                                 pb.fill_copies * 5);
}

TEST(GfdpTest, SharedBestEfficiencyBehavesAsOso) {
  const Instance inst = gen_subset_sum(30, {100, 1000, 5000, 9000}, 3);
  const auto oso = solve_oso(inst);
  const auto gfdp = solve_gfdp(inst);
  EXPECT_EQ(gfdp.optimal_value, oso.optimal_value);
  EXPECT_EQ(gfdp.stats.at("capacities_scanned"), oso.stats.at("capacities_scanned"));
  EXPECT_EQ(gfdp.stats.at("inner_iterations"), oso.stats.at("inner_iterations"));
  EXPECT_EQ(gfdp.stats.at("states_expanded"), oso.stats.at("states_expanded"));
}

TEST(GfdpTest, StopsBeforeCapacityWhenBestItemDominates) {
  const Instance inst(1'000'000, {{10, 30}, {7, 8}, {13, 20}});
  const auto r = solve_gfdp(inst);
  EXPECT_LT(r.stats.at("capacities_scanned"), 1'000'000);
  EXPECT_EQ(r.optimal_value, solve_naive_dp(inst).optimal_value);
}

TEST(StepOffTest, TimeoutIsReported) {
  const Instance inst = gen_breq(1 << 14, 1);
  EXPECT_EQ(solve_oso(inst, Deadline(Seconds(0))).terminated_by, Termination::timeout);
}

TEST(StepOffTest, SevenItemSet) {
  const Instance inst(24, kSevenItems);
  EXPECT_EQ(solve_oso(inst).optimal_value, testing::brute_force_opt(inst));
}

}  // namespace
}  // namespace ukp
