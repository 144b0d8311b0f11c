#include "ukp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>
#include <vector>

namespace ukp {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::int64_t> unique_draw(SplitMix64& rng, std::int64_t n, std::int64_t lo,
                                      std::int64_t hi) {
  if (lo > hi) throw Error("empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (n < 1) throw Error("n must be positive");
  if (static_cast<__int128>(hi) - lo + 1 < n) {
    throw Error("cannot draw " + std::to_string(n) + " unique values from [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(n) * 2);
  while (static_cast<std::int64_t>(out.size()) < n) {
    const std::int64_t v = rng.uniform(lo, hi);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

template <typename T>
void fisher_yates(SplitMix64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

std::int64_t isqrt(unsigned __int128 x) {
  auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<std::int64_t>(r);
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::string_view tag)
    : state_(mix(seed ^ fnv1a64(tag))) {}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::realistic_random: return "realistic_random";
    case Distribution::breq: return "breq";
    case Distribution::subset_sum: return "subset_sum";
    case Distribution::strong_corr: return "strong_corr";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "realistic_random" || name == "rr") return Distribution::realistic_random;
  if (name == "breq") return Distribution::breq;
  if (name == "subset_sum" || name == "ss") return Distribution::subset_sum;
  if (name == "strong_corr" || name == "sc") return Distribution::strong_corr;
  throw Error("unknown distribution '" + std::string(name) + "'");
}

RangeParams realistic_random_params(std::int64_t n) {
  const std::int64_t max = n * 1024;
  const std::int64_t min = max / 16;
  return {min, max, 2 * max, 2 * max + min};
}

Instance gen_realistic_random(std::int64_t n, const RangeParams& range, std::uint64_t seed) {
  if (n < 2) throw Error("realistic random instances need n >= 2");
  SplitMix64 rng(seed, "realistic_random");
  auto weights = unique_draw(rng, n, range.w_min, range.w_max);
  auto profits = unique_draw(rng, n, range.w_min, range.w_max);
  std::sort(weights.begin(), weights.end());
  std::sort(profits.begin(), profits.end());
  std::vector<Item> items(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < items.size(); ++i) items[i] = {weights[i], profits[i]};
  fisher_yates(rng, items);
  const Weight c = rng.uniform(range.c_min, range.c_max);
  return Instance(c, std::move(items));
}

Instance gen_realistic_random(std::int64_t n, std::uint64_t seed) {
  return gen_realistic_random(n, realistic_random_params(n), seed);
}

Profit breq_profit(Weight w, Weight w_max, Profit p_max) {
  // floor(sqrt(x)) == floor(sqrt(floor(x))) for real x >= 0, so the radicand
  // p_max^2 (w_max^2 - w^2) / w_max^2 can be floored before the root.
  using U = unsigned __int128;
  const U pm = static_cast<U>(p_max);
  const U wm = static_cast<U>(w_max);
  const U ww = static_cast<U>(w);
  const U radicand = pm * pm * (wm * wm - ww * ww) / (wm * wm);
  const Profit p = p_max - isqrt(radicand);
  return std::max<Profit>(p, 1);
}

Instance gen_breq(std::int64_t n, Weight capacity, Weight w_max, Profit p_max,
                  std::uint64_t seed) {
  SplitMix64 rng(seed, "breq");
  const auto weights = unique_draw(rng, n, 1, w_max);
  std::vector<Item> items;
  items.reserve(weights.size());
  for (const Weight w : weights) items.push_back({w, breq_profit(w, w_max, p_max)});
  return Instance(capacity, std::move(items));
}

Instance gen_breq(std::int64_t n, std::uint64_t seed) {
  const Weight c = 128 * n;
  return gen_breq(n, c, c, 16 * c, seed);
}

Instance gen_subset_sum(std::int64_t n, const RangeParams& range, std::uint64_t seed) {
  SplitMix64 rng(seed, "subset_sum");
  const auto weights = unique_draw(rng, n, range.w_min, range.w_max);
  std::vector<Item> items;
  items.reserve(weights.size());
  for (const Weight w : weights) items.push_back({w, w});
  const Weight c = rng.uniform(range.c_min, range.c_max);
  return Instance(c, std::move(items));
}

Instance gen_strong_corr(std::int64_t n, std::int64_t alpha, const RangeParams& range,
                         std::uint64_t seed) {
  if (range.w_min + alpha < 1) {
    throw Error("non-positive profit: w_min + alpha = " + std::to_string(range.w_min + alpha));
  }
  SplitMix64 rng(seed, "strong_corr");
  const auto weights = unique_draw(rng, n, range.w_min, range.w_max);
  std::vector<Item> items;
  items.reserve(weights.size());
  for (const Weight w : weights) items.push_back({w, w + alpha});
  const Weight c = rng.uniform(range.c_min, range.c_max);
  return Instance(c, std::move(items));
}

std::int64_t concat_decimal(std::int64_t prefix, std::int64_t n) {
  return std::stoll(std::to_string(prefix) + std::to_string(n));
}

namespace {

std::int64_t pick(SplitMix64& rng, std::initializer_list<std::int64_t> options) {
  const auto k = rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1);
  return *(options.begin() + k);
}

}  // namespace

Instance generate(const GenSpec& spec) {
  std::int64_t n = spec.n;
  const std::string preset = spec.preset.value_or("");
  switch (spec.distribution) {
    case Distribution::realistic_random: {
      if (!preset.empty()) throw Error("realistic_random has no presets");
      auto range = realistic_random_params(n);
      range.w_min = spec.w_min.value_or(range.w_min);
      range.w_max = spec.w_max.value_or(range.w_max);
      range.c_min = spec.c_min.value_or(range.c_min);
      range.c_max = spec.c_max.value_or(range.c_max);
      return gen_realistic_random(n, range, spec.seed);
    }
    case Distribution::breq: {
      if (!preset.empty() && preset != "breq-128-16") {
        throw Error("unknown breq preset '" + preset + "'");
      }
      const Weight c = spec.c_min.value_or(128 * n);
      const Weight w_max = spec.w_max.value_or(c);
      const Profit p_max = spec.p_max.value_or(16 * w_max);
      return gen_breq(n, c, w_max, p_max, spec.seed);
    }
    case Distribution::subset_sum: {
      RangeParams range{1000, 500000, 5000000, 10000000};
      if (preset == "pyasukp-ss") {
        // Parameter grid of the PYAsUKP subset-sum family; the cell is a
        // function of the seed.
        SplitMix64 grid(spec.seed, "pyasukp-ss");
        range.w_min = pick(grid, {1000, 5000, 10000, 50000, 100000});
        range.w_max = pick(grid, {500000, 1000000});
      } else if (!preset.empty()) {
        throw Error("unknown subset_sum preset '" + preset + "'");
      }
      range.w_min = spec.w_min.value_or(range.w_min);
      range.w_max = spec.w_max.value_or(range.w_max);
      range.c_min = spec.c_min.value_or(range.c_min);
      range.c_max = spec.c_max.value_or(range.c_max);
      return gen_subset_sum(n, range, spec.seed);
    }
    case Distribution::strong_corr: {
      std::int64_t alpha = spec.alpha.value_or(5);
      RangeParams range{};
      if (preset == "hard-sc") {
        if (n == 0) n = 10000;
        alpha = spec.alpha.value_or(-5);
        range.w_min = 110000;
        range.c_min = range.c_max = 9008057;
      } else if (!preset.empty()) {
        throw Error("unknown strong_corr preset '" + preset + "'");
      } else {
        range.w_min = 10 * n;
        range.c_min = concat_decimal(20, n);
        range.c_max = concat_decimal(100, n);
      }
      range.w_min = spec.w_min.value_or(range.w_min);
      // hard-sc draws n consecutive weights starting at w_min; otherwise the
      // weights are spread over [w_min, 10 w_min].
      range.w_max = spec.w_max.value_or(preset == "hard-sc" ? range.w_min + n - 1
                                                            : 10 * range.w_min);
      range.c_min = spec.c_min.value_or(range.c_min);
      range.c_max = spec.c_max.value_or(range.c_max);
      return gen_strong_corr(n, alpha, range, spec.seed);
    }
  }
  throw Error("unknown distribution");
}

}  // namespace ukp
