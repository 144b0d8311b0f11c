#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ukp {

using Weight = std::int64_t;
using Profit = std::int64_t;
using ItemIndex = std::size_t;

inline constexpr std::string_view kVersion = "0.1.0";

/// 64-bit FNV-1a hash, used as the instance checksum in reports.
std::uint64_t fnv1a64(std::string_view bytes);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance document. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Input rejected by a validity check (overflow guard, capacity limits, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

struct Item {
  Weight weight{1};
  Profit profit{1};

  double efficiency() const {
    return static_cast<double>(profit) / static_cast<double>(weight);
  }
  friend bool operator==(const Item&, const Item&) = default;
};

/// Exact comparison of p_a/w_a against p_b/w_b (negative, zero, positive).
int compare_efficiency(const Item& a, const Item& b);

/// Immutable UKP instance: a capacity and an ordered item list. The item order
/// is significant (it breaks full ties when picking the best item).
class Instance {
 public:
  /// Throws InvalidInstance when capacity < 1, the list is empty, an item has
  /// non-positive weight/profit, or the 63-bit overflow guard fails.
  Instance(Weight capacity, std::vector<Item> items);

  Weight capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  std::span<const Item> items() const { return items_; }
  const Item& operator[](ItemIndex i) const { return items_[i]; }

  Weight min_weight() const { return w_min_; }
  Weight max_weight() const { return w_max_; }

  /// Same items, different capacity.
  Instance with_capacity(Weight capacity) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Weight capacity_;
  std::vector<Item> items_;
  Weight w_min_;
  Weight w_max_;
};

/// Item multiset over an instance, with cached totals.
class Solution {
 public:
  Solution() = default;

  /// Adds `copies` of item `index` (whose data is `item`).
  void add(ItemIndex index, const Item& item, std::int64_t copies = 1);

  const std::map<ItemIndex, std::int64_t>& counts() const { return counts_; }
  std::int64_t count(ItemIndex index) const;
  Weight total_weight() const { return weight_; }
  Profit total_profit() const { return profit_; }
  bool empty() const { return counts_.empty(); }

  /// Builds a solution from raw counts, recomputing the totals from `instance`.
  /// Throws Error on an index outside the instance.
  static Solution from_counts(const std::map<ItemIndex, std::int64_t>& counts,
                              const Instance& instance);

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::map<ItemIndex, std::int64_t> counts_;
  Weight weight_{0};
  Profit profit_{0};
};

struct Evaluation {
  Weight weight{0};
  Profit profit{0};
  bool feasible{true};
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Recomputes weight and profit of `solution` against `instance`.
Evaluation evaluate(const Solution& solution, const Instance& instance);

/// Most efficient item; ties go to the lowest weight, then the lowest index.
ItemIndex best_item(const Instance& instance);

/// Item indices ordered by non-increasing efficiency, then non-decreasing
/// weight, then index. Every solver that needs an efficiency order uses this.
std::vector<ItemIndex> efficiency_order(std::span<const Item> items);

enum class Termination { optimal, timeout, error };

std::string_view to_string(Termination t);

using Seconds = std::chrono::duration<double>;

/// Wall-clock budget measured on the monotonic clock.
class Deadline {
 public:
  /// No limit.
  Deadline() = default;
  explicit Deadline(Seconds budget);

  static Deadline never() { return Deadline{}; }

  bool expired() const;
  bool unlimited() const { return unlimited_; }
  Seconds budget() const { return budget_; }
  Seconds remaining() const;

 private:
  using Clock = std::chrono::steady_clock;
  bool unlimited_{true};
  Seconds budget_{0};
  Clock::time_point end_{};
};

struct SolverOutcome {
  Profit optimal_value{0};
  Solution solution;
  Seconds elapsed{0};
  std::map<std::string, std::int64_t> stats;
  Termination terminated_by{Termination::optimal};
};

/// Parses the text instance format:
///
///     n: <int>
///     c: <int>
///     begin data
///     <w> <p>      (n lines)
///     end data
///
/// Lines starting with '#' are ignored anywhere.
Instance parse_ukp_instance(std::string_view text);

/// Writes `instance` in the format read by parse_ukp_instance.
std::string render_ukp_instance(const Instance& instance);

Instance read_ukp_file(const std::string& path);
void write_ukp_file(const std::string& path, const Instance& instance);

}  // namespace ukp
