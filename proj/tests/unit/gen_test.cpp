#include "ukp/gen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ukp/dominance.hpp"

namespace ukp {
namespace {

// Reference SplitMix64 step, written out independently of the library.
std::uint64_t reference_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t reference_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TEST(SplitMixTest, ReferenceStepMatchesPublishedVector) {
  std::uint64_t state = 0;
  EXPECT_EQ(reference_step(state), 0xE220A8397B1DCDAFULL);
}

TEST(SplitMixTest, StreamMatchesReferenceFromKeyedState) {
  for (const std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    SplitMix64 rng(seed, "breq");
    std::uint64_t state = reference_finalize(seed ^ fnv1a64("breq"));
    for (int i = 0; i < 16; ++i) EXPECT_EQ(rng.next(), reference_step(state));
  }
}

TEST(SplitMixTest, TagsGiveDifferentStreams) {
  SplitMix64 a(7, "subset_sum"), b(7, "strong_corr");
  EXPECT_NE(a.next(), b.next());
}

TEST(SplitMixTest, UniformStaysInRange) {
  SplitMix64 rng(3, "t");
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.uniform(5, 5), 5);
}

TEST(GenerateTest, PinnedRegressionChecksums) {
  // Guards the draw order; changing it changes every generated corpus.
  EXPECT_EQ(fnv1a64(render_ukp_instance(gen_realistic_random(8, 1))), 0x2885A180036DC54FULL);
}

TEST(RealisticRandomTest, ParametersScaleWithN) {
  const RangeParams r = realistic_random_params(1024);
  EXPECT_EQ(r.w_max, 1048576);
  EXPECT_EQ(r.w_min, 65536);
  EXPECT_EQ(r.c_min, 2097152);
  EXPECT_EQ(r.c_max, 2162688);
}

TEST(RealisticRandomTest, SortedPairingLeavesNoSimpleDominance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_realistic_random(200, seed);
    const RangeParams r = realistic_random_params(200);
    EXPECT_GE(inst.capacity(), r.c_min);
    EXPECT_LE(inst.capacity(), r.c_max);
    std::vector<Item> items(inst.items().begin(), inst.items().end());
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.weight < b.weight; });
    for (std::size_t i = 1; i < items.size(); ++i) {
      EXPECT_LT(items[i - 1].weight, items[i].weight);
      EXPECT_LT(items[i - 1].profit, items[i].profit);
    }
    EXPECT_TRUE(remove_dominated(inst, DominanceLevel::simple).removed.empty());
  }
}

TEST(RealisticRandomTest, ShuffleDoesNotKeepWeightOrder) {
  const Instance inst = gen_realistic_random(64, 5);
  std::vector<Weight> w;
  for (const Item& it : inst.items()) w.push_back(it.weight);
  EXPECT_FALSE(std::is_sorted(w.begin(), w.end()));
}

TEST(RealisticRandomTest, RejectsTooSmallRanges) {
  EXPECT_THROW(gen_realistic_random(10, {1, 5, 10, 20}, 1), Error);
  EXPECT_THROW(gen_realistic_random(1, 1), Error);
}

TEST(BreqTest, ProfitFormula) {
  EXPECT_EQ(breq_profit(60, 100, 100), 20);
  EXPECT_EQ(breq_profit(100, 100, 100), 100);
  EXPECT_EQ(breq_profit(1, 100, 100), 1);
}

TEST(BreqTest, ProfitFormulaIsExactForLargeValues) {
  // 3-4-5 triangle scaled so the root is exact.
  const Weight wm = Weight{5} << 20;
  const Profit pm = 16 * wm;
  EXPECT_EQ(breq_profit(wm, wm, pm), pm);
  EXPECT_EQ(breq_profit(Weight{3} << 20, wm, pm), pm / 5);
  // Reference value from an independent arbitrary-precision isqrt.
  EXPECT_EQ(breq_profit((Weight{1} << 21) * 3 / 5, Weight{1} << 21, Profit{16} << 21), 6710885);
}

TEST(BreqTest, ProfitIsNonDecreasingInWeight) {
  Profit prev = 0;
  for (Weight w = 1; w <= 5000; ++w) {
    const Profit p = breq_profit(w, 5000, 80000);
    ASSERT_GE(p, prev) << w;
    prev = p;
  }
}

TEST(BreqTest, PresetShape) {
  const Instance inst = gen_breq(256, 9);
  EXPECT_EQ(inst.size(), 256u);
  EXPECT_EQ(inst.capacity(), 128 * 256);
  std::set<Weight> w;
  for (const Item& it : inst.items()) {
    w.insert(it.weight);
    EXPECT_EQ(it.profit, breq_profit(it.weight, 128 * 256, 16 * 128 * 256));
  }
  EXPECT_EQ(w.size(), 256u);
}

TEST(SubsetSumTest, ProfitEqualsWeight) {
  const Instance inst = gen_subset_sum(100, {10, 1000, 5000, 6000}, 2);
  for (const Item& it : inst.items()) EXPECT_EQ(it.profit, it.weight);
  EXPECT_GE(inst.capacity(), 5000);
  EXPECT_LE(inst.capacity(), 6000);
}

TEST(SubsetSumTest, PresetRanges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenSpec spec;
    spec.distribution = Distribution::subset_sum;
    spec.n = 50;
    spec.seed = seed;
    spec.preset = "pyasukp-ss";
    const Instance inst = generate(spec);
    EXPECT_GE(inst.capacity(), 5000000);
    EXPECT_LE(inst.capacity(), 10000000);
    EXPECT_LE(inst.max_weight(), 1000000);
    EXPECT_GE(inst.min_weight(), 1000);
  }
}

TEST(StrongCorrTest, ProfitIsWeightPlusAlpha) {
  const Instance inst = gen_strong_corr(100, 5, {500, 5000, 200000, 1000000}, 4);
  for (const Item& it : inst.items()) EXPECT_EQ(it.profit, it.weight + 5);
}

TEST(StrongCorrTest, HardPresetShape) {
  GenSpec spec;
  spec.distribution = Distribution::strong_corr;
  spec.preset = "hard-sc";
  spec.seed = 1;
  const Instance inst = generate(spec);
  EXPECT_EQ(inst.size(), 10000u);
  EXPECT_EQ(inst.capacity(), 9008057);
  EXPECT_EQ(inst.min_weight(), 110000);
  EXPECT_EQ(inst.max_weight(), 119999);
  for (const Item& it : inst.items()) EXPECT_EQ(it.profit, it.weight - 5);
}

TEST(StrongCorrTest, DefaultRanges) {
  GenSpec spec;
  spec.distribution = Distribution::strong_corr;
  spec.n = 50;
  spec.seed = 8;
  const Instance inst = generate(spec);
  EXPECT_GE(inst.min_weight(), 500);
  EXPECT_LE(inst.max_weight(), 5000);
  EXPECT_GE(inst.capacity(), 2050);
  EXPECT_LE(inst.capacity(), 10050);
}

TEST(StrongCorrTest, RejectsNonPositiveProfits) {
  EXPECT_THROW(gen_strong_corr(10, -5, {5, 100, 200, 300}, 1), Error);
  EXPECT_NO_THROW(gen_strong_corr(10, -5, {6, 100, 200, 300}, 1));
}

TEST(GenerateTest, ConcatDecimal) {
  EXPECT_EQ(concat_decimal(20, 5000), 205000);
  EXPECT_EQ(concat_decimal(100, 7), 1007);
}

TEST(GenerateTest, IdenticalSpecsGiveIdenticalText) {
  for (const auto dist : {Distribution::realistic_random, Distribution::breq,
                          Distribution::subset_sum, Distribution::strong_corr}) {
    GenSpec spec;
    spec.distribution = dist;
    spec.n = 40;
    spec.seed = 77;
    EXPECT_EQ(render_ukp_instance(generate(spec)), render_ukp_instance(generate(spec)));
    GenSpec other = spec;
    other.seed = 78;
    EXPECT_NE(render_ukp_instance(generate(spec)), render_ukp_instance(generate(other)));
  }
}

TEST(GenerateTest, NamesAndErrors) {
  EXPECT_EQ(parse_distribution("ss"), Distribution::subset_sum);
  EXPECT_EQ(parse_distribution(to_string(Distribution::breq)), Distribution::breq);
  EXPECT_THROW(parse_distribution("uncorrelated"), Error);
  GenSpec spec;
  spec.distribution = Distribution::breq;
  spec.n = 4;
  spec.preset = "nope";
  EXPECT_THROW(generate(spec), Error);
}

}  // namespace
}  // namespace ukp
