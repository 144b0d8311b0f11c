#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ukp/core.hpp"

namespace ukp {

/// SplitMix64 stream keyed by (seed, tag). Every draw is specified bit for bit
/// so identical specs give identical instances on any platform.
class SplitMix64 {
 public:
  SplitMix64(std::uint64_t seed, std::string_view tag);

  std::uint64_t next();
  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

enum class Distribution { realistic_random, breq, subset_sum, strong_corr };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view name);

/// Everything needed to reproduce an instance. Unset optionals take the
/// distribution's (or preset's) defaults.
///
/// Presets:
///   breq-128-16  c = 128 n, w_max = c, p_max = 16 w_max
///   pyasukp-ss   w_min in {1e3, 5e3, 1e4, 5e4, 1e5}, w_max in {5e5, 1e6}
///                (picked from the seed), c in [5e6, 1e7]
///   hard-sc      alpha = -5, n = 1e4, weights w_min..w_min+n-1 with
///                w_min = 110000, c = 9008057
/// Without a preset, strong_corr uses w_min = 10 n, w_max = 10 w_min and
/// c in [concat(20, n), concat(100, n)].
struct GenSpec {
  Distribution distribution{Distribution::realistic_random};
  std::int64_t n{0};
  std::uint64_t seed{0};
  std::optional<std::string> preset;
  std::optional<std::int64_t> w_min, w_max, c_min, c_max, alpha, p_max;
};

/// Resolves presets and defaults, then draws the instance.
Instance generate(const GenSpec& spec);

struct RangeParams {
  std::int64_t w_min, w_max, c_min, c_max;
};

/// Realistic random: two sorted lists of n unique values in [w_min, w_max]
/// paired position by position, then shuffled; c uniform in [c_min, c_max].
/// Draw order: weights, profits, shuffle, capacity.
Instance gen_realistic_random(std::int64_t n, const RangeParams& range, std::uint64_t seed);
/// Derived parameters: max = n * 2^10, min = max / 2^4, c in [2 max, 2 max + min].
Instance gen_realistic_random(std::int64_t n, std::uint64_t seed);
RangeParams realistic_random_params(std::int64_t n);

/// p = p_max - floor(sqrt(p_max^2 - w^2 (p_max / w_max)^2)), exact, clamped to >= 1.
Profit breq_profit(Weight w, Weight w_max, Profit p_max);

/// n unique weights uniform in [1, w_max] with BREQ profits and capacity c.
Instance gen_breq(std::int64_t n, Weight capacity, Weight w_max, Profit p_max,
                  std::uint64_t seed);
/// BREQ 128-16: c = 128 n, w_max = c, p_max = 16 w_max.
Instance gen_breq(std::int64_t n, std::uint64_t seed);

/// n unique weights uniform in [w_min, w_max], p = w, c uniform in [c_min, c_max].
Instance gen_subset_sum(std::int64_t n, const RangeParams& range, std::uint64_t seed);

/// n unique weights uniform in [w_min, w_max], p = w + alpha, c uniform in
/// [c_min, c_max]. Throws when w_min + alpha < 1.
Instance gen_strong_corr(std::int64_t n, std::int64_t alpha, const RangeParams& range,
                         std::uint64_t seed);

/// Decimal concatenation used by the strongly correlated capacity ranges:
/// concat_decimal(20, 5000) == 205000.
std::int64_t concat_decimal(std::int64_t prefix, std::int64_t n);

}  // namespace ukp
