#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ukp/core.hpp"

namespace ukp {

/// Cutting-stock / bin-packing instance. Demands are all 1 for bin packing.
struct CspInstance {
  Weight capacity{0};
  std::vector<Weight> sizes;
  std::vector<std::int64_t> demands;
};

/// BPPLIB-style text: n, then the bin capacity, then n lines "size [demand]".
/// Throws ParseError on malformed text and on sizes above the capacity.
CspInstance parse_bpp_instance(std::string_view text);
CspInstance read_bpp_file(const std::string& path);

/// Copies of each size cut from one roll.
struct Pattern {
  std::vector<std::int64_t> multiplicities;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

Weight pattern_weight(const Pattern& pattern, const CspInstance& instance);

/// One homogeneous pattern per size with floor(c / w_i) copies.
std::vector<Pattern> initial_patterns(const CspInstance& instance);

/// Revised primal simplex for min sum x_p s.t. sum_p a_ip x_p >= d_i, x >= 0.
/// Columns can be appended between solves; the previous basis is kept.
class MasterLp {
 public:
  explicit MasterLp(const CspInstance& instance);

  void add_pattern(const Pattern& pattern);
  /// Reoptimizes. Throws Error when the patterns cannot cover the demands or
  /// the simplex fails numerically.
  void solve();

  double objective() const { return objective_; }
  /// Weight of every added pattern, in insertion order.
  std::vector<double> primal() const;
  /// Shadow prices of the covering rows, clamped at 0.
  const std::vector<double>& duals() const { return duals_; }
  std::int64_t pivots() const { return pivots_; }

 private:
  struct Column {
    std::vector<double> a;
    double cost;
    bool artificial;
  };

  void refactor();
  std::vector<double> ftran(const std::vector<double>& a) const;
  void compute_duals();

  std::size_t m_;
  std::vector<double> demand_;
  std::vector<Column> columns_;          // m artificials, m surplus, then patterns
  std::vector<std::size_t> basis_;       // column per row
  std::vector<char> is_basic_;
  std::vector<double> binv_;             // row-major m x m
  std::vector<double> x_basic_;
  std::vector<double> raw_duals_;
  std::vector<double> duals_;
  double objective_{0};
  std::int64_t pivots_{0};
  std::int64_t since_refactor_{0};
};

struct MasterResult {
  double lp_value{0};
  std::vector<double> primal;
  std::vector<double> duals;
};

/// Cold solve of the master restricted to `patterns`.
MasterResult solve_master(const std::vector<Pattern>& patterns, const CspInstance& instance);

enum class PricingSort { efficiency, weight };
enum class PricingProfit { scaled, native };
enum class Pricer { oso, mtu1 };

std::string_view to_string(PricingSort s);
std::string_view to_string(PricingProfit p);
std::string_view to_string(Pricer p);
PricingSort parse_pricing_sort(std::string_view name);
PricingProfit parse_pricing_profit(std::string_view name);
Pricer parse_pricer(std::string_view name);

/// Scaled profits are floor(dual * 2^40).
inline constexpr double kProfitScale = 1099511627776.0;
/// A pattern improves when its dual value exceeds 1 + 2^-30.
inline constexpr double kImprovingEpsilon = 1.0 / 1073741824.0;

struct PricingVariant {
  PricingSort sort{PricingSort::efficiency};
  PricingProfit profit{PricingProfit::scaled};
  Pricer pricer{Pricer::oso};
};

struct PricingResult {
  /// Set only for an improving pattern.
  std::optional<Pattern> pattern;
  /// Dual value sum a_i y_i of the best pattern found (0 if none).
  double value{0};
  Seconds elapsed{0};
  bool timed_out{false};
};

/// Solves the pricing knapsack (weights = sizes, profits = duals, capacity =
/// roll length) after dropping non-positive profits. The MTU1 pricer needs
/// the efficiency order and rejects PricingSort::weight.
PricingResult price(const std::vector<double>& duals, const CspInstance& instance,
                    const PricingVariant& variant, const Deadline& deadline = {});

struct ColGenConfig {
  PricingVariant variant;
  /// Master iterations allowed; 0 selects 50 n.
  std::int64_t iteration_cap{0};
  /// Budget for each pricing call; unlimited when empty.
  std::optional<Seconds> pricing_timeout;
};

struct IterationTrace {
  std::int64_t iteration{0};
  double pricing_s{0};
  double master_s{0};
  double lp_value{0};
};

struct ColGenState {
  std::vector<Pattern> patterns;
  double lp_value{0};
  std::vector<double> duals;
  std::int64_t iterations{0};
  std::vector<Seconds> pricing_times;
  Seconds total_pricing{0};
  Seconds total_master{0};
  std::vector<IterationTrace> trace;
};

/// Error raised mid-run; carries everything computed so far.
class ColGenError : public Error {
 public:
  ColGenError(const std::string& what, ColGenState partial)
      : Error(what), partial_(std::move(partial)) {}
  const ColGenState& partial() const { return partial_; }

 private:
  ColGenState partial_;
};

/// Master/pricing loop from the homogeneous patterns until pricing finds no
/// improving column. Throws ColGenError on the iteration cap or a pricing
/// timeout.
ColGenState column_generation(const CspInstance& instance, const ColGenConfig& config = {});

}  // namespace ukp
