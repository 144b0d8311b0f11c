#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ukp/core.hpp"

namespace ukp {

enum class Algorithm { naive, oso, tso, gfdp, mtu1, mtu2 };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
/// Comma separated list, e.g. "oso,tso,mtu1".
std::vector<Algorithm> parse_algorithm_list(std::string_view list);

SolverOutcome run_solver(Algorithm algorithm, const Instance& instance,
                         const Deadline& deadline = {});

struct BenchInstance {
  std::string id;
  /// Group used by summarize(); the parent directory name for loaded files.
  std::string dataset;
  Instance instance;
  std::uint64_t checksum{0};
};

/// Reads every file; id is the file name, dataset its parent directory name
/// ("default" when there is none).
std::vector<BenchInstance> load_bench_instances(const std::vector<std::string>& paths);

struct BenchRow {
  std::string instance_id;
  std::string dataset;
  std::string algorithm;
  int rep{0};
  double elapsed_s{0};
  Termination terminated_by{Termination::optimal};
  Profit optimal_value{0};
  std::map<std::string, std::int64_t> stats;
  std::string error;
};

/// Solver hook so tests can inject failures; defaults to run_solver.
using SolverRunner =
    std::function<SolverOutcome(Algorithm, const Instance&, const Deadline&)>;

struct BenchOptions {
  Seconds timeout{1800};
  int repetitions{1};
  /// Worker threads; 0 or 1 runs serially.
  int parallel{0};
  SolverRunner runner;
};

/// One row per (instance, algorithm, repetition) in that nesting order.
/// Timed-out runs report elapsed = timeout; a throwing solver yields an
/// error row and the matrix continues.
std::vector<BenchRow> run_matrix(const std::vector<BenchInstance>& instances,
                                 const std::vector<Algorithm>& algorithms,
                                 const BenchOptions& options);

/// Keeps, per (instance, algorithm), the repetition with the median elapsed
/// time (lower median for an even count).
std::vector<BenchRow> collapse_median(const std::vector<BenchRow>& rows);

struct SummaryRow {
  std::string dataset;
  std::string algorithm;
  int runs{0};
  int fin{0};
  /// Over finished runs only; empty when undefined.
  std::optional<double> avg, sd, max;
};

/// Per (dataset, algorithm), in first-appearance order. sd is the sample
/// standard deviation. Throws Error on empty input.
std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows);

struct Disagreement {
  std::string instance_id;
  std::string algorithm_a, algorithm_b;
  Profit value_a{0}, value_b{0};
};

/// Pairs of optimal rows on the same instance reporting different values.
std::vector<Disagreement> find_disagreements(const std::vector<BenchRow>& rows);

/// Fixed-point rendering, or "--" when the value is undefined.
std::string format_stat(std::optional<double> value, int decimals = 2);

/// Header `instance_id,algorithm,rep,elapsed_s,terminated_by,optimal_value`
/// followed by the union of stat names, sorted. Missing stats are left empty.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Plain-text table with columns dataset, algorithm, fin, avg, sd, max.
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary);

}  // namespace ukp
