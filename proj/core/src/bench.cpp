#include "ukp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "ukp/bb.hpp"
#include "ukp/dp.hpp"

namespace ukp {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::naive: return "naive";
    case Algorithm::oso: return "oso";
    case Algorithm::tso: return "tso";
    case Algorithm::gfdp: return "gfdp";
    case Algorithm::mtu1: return "mtu1";
    case Algorithm::mtu2: return "mtu2";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const Algorithm a : {Algorithm::naive, Algorithm::oso, Algorithm::tso, Algorithm::gfdp,
                            Algorithm::mtu1, Algorithm::mtu2}) {
    if (name == to_string(a)) return a;
  }
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> parse_algorithm_list(std::string_view list) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const auto name = list.substr(start, comma - start);
    if (!name.empty()) out.push_back(parse_algorithm(name));
    start = comma + 1;
  }
  if (out.empty()) throw Error("empty algorithm list");
  return out;
}

SolverOutcome run_solver(Algorithm algorithm, const Instance& instance,
                         const Deadline& deadline) {
  switch (algorithm) {
    case Algorithm::naive: return solve_naive_dp(instance, deadline);
    case Algorithm::oso: return solve_oso(instance, deadline);
    case Algorithm::tso: return solve_tso(instance, deadline);
    case Algorithm::gfdp: return solve_gfdp(instance, deadline);
    case Algorithm::mtu1: return solve_mtu1(instance, deadline);
    case Algorithm::mtu2: return solve_mtu2(instance, deadline);
  }
  throw Error("unknown algorithm");
}

std::vector<BenchInstance> load_bench_instances(const std::vector<std::string>& paths) {
  std::vector<BenchInstance> out;
  out.reserve(paths.size());
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const std::filesystem::path p(path);
    std::string dataset = p.parent_path().filename().string();
    if (dataset.empty()) dataset = "default";
    out.push_back({p.filename().string(), dataset, parse_ukp_instance(text), fnv1a64(text)});
  }
  return out;
}

namespace {

BenchRow run_one(const BenchInstance& inst, Algorithm algorithm, int rep,
                 const BenchOptions& options) {
  BenchRow row;
  row.instance_id = inst.id;
  row.dataset = inst.dataset;
  row.algorithm = std::string(to_string(algorithm));
  row.rep = rep;
  const double limit = options.timeout.count();
  const auto start = std::chrono::steady_clock::now();
  try {
    const Deadline deadline(options.timeout);
    const SolverOutcome outcome = options.runner ? options.runner(algorithm, inst.instance, deadline)
                                                 : run_solver(algorithm, inst.instance, deadline);
    const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
    row.stats = outcome.stats;
    row.terminated_by = outcome.terminated_by;
    if (outcome.terminated_by == Termination::timeout || elapsed > limit) {
      row.terminated_by = Termination::timeout;
      row.elapsed_s = limit;
    } else {
      row.elapsed_s = elapsed;
      row.optimal_value = outcome.optimal_value;
    }
  } catch (const std::exception& e) {
    row.terminated_by = Termination::error;
    row.elapsed_s = Seconds(std::chrono::steady_clock::now() - start).count();
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_matrix(const std::vector<BenchInstance>& instances,
                                 const std::vector<Algorithm>& algorithms,
                                 const BenchOptions& options) {
  struct Task {
    const BenchInstance* instance;
    Algorithm algorithm;
    int rep;
  };
  std::vector<Task> tasks;
  for (const auto& inst : instances) {
    for (const Algorithm a : algorithms) {
      for (int rep = 0; rep < std::max(1, options.repetitions); ++rep) tasks.push_back({&inst, a, rep});
    }
  }
  std::vector<BenchRow> rows(tasks.size());
  if (options.parallel <= 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      rows[k] = run_one(*tasks[k].instance, tasks[k].algorithm, tasks[k].rep, options);
    }
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < options.parallel; ++t) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < tasks.size(); k = next++) {
        rows[k] = run_one(*tasks[k].instance, tasks[k].algorithm, tasks[k].rep, options);
      }
    });
  }
  for (auto& w : workers) w.join();
  return rows;
}

std::vector<BenchRow> collapse_median(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRow*>> groups;
  for (const auto& row : rows) {
    auto key = std::make_pair(row.instance_id, row.algorithm);
    auto& group = groups[key];
    if (group.empty()) keys.push_back(key);
    group.push_back(&row);
  }
  std::vector<BenchRow> out;
  for (const auto& key : keys) {
    auto group = groups[key];
    std::stable_sort(group.begin(), group.end(), [](const BenchRow* a, const BenchRow* b) {
      return a->elapsed_s < b->elapsed_s;
    });
    out.push_back(*group[(group.size() - 1) / 2]);
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw Error("nothing to summarize");
  std::vector<SummaryRow> out;
  std::map<std::pair<std::string, std::string>, std::vector<double>> finished;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.dataset, row.algorithm);
    auto [it, inserted] = slot.emplace(key, out.size());
    if (inserted) out.push_back({row.dataset, row.algorithm, 0, 0, {}, {}, {}});
    ++out[it->second].runs;
    if (row.terminated_by == Termination::optimal) finished[key].push_back(row.elapsed_s);
  }
  for (auto& s : out) {
    const auto& times = finished[{s.dataset, s.algorithm}];
    s.fin = static_cast<int>(times.size());
    if (times.empty()) continue;
    double sum = 0;
    for (const double t : times) sum += t;
    s.avg = sum / static_cast<double>(times.size());
    s.max = *std::max_element(times.begin(), times.end());
    if (times.size() > 1) {
      double sq = 0;
      for (const double t : times) sq += (t - *s.avg) * (t - *s.avg);
      s.sd = std::sqrt(sq / static_cast<double>(times.size() - 1));
    }
  }
  return out;
}

std::vector<Disagreement> find_disagreements(const std::vector<BenchRow>& rows) {
  std::map<std::string, const BenchRow*> reference;
  std::vector<Disagreement> out;
  for (const auto& row : rows) {
    if (row.terminated_by != Termination::optimal) continue;
    auto [it, inserted] = reference.emplace(row.instance_id, &row);
    if (!inserted && it->second->optimal_value != row.optimal_value) {
      out.push_back({row.instance_id, it->second->algorithm, row.algorithm,
                     it->second->optimal_value, row.optimal_value});
    }
  }
  return out;
}

std::string format_stat(std::optional<double> value, int decimals) {
  if (!value) return "--";
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << *value;
  return s.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::set<std::string> stat_names;
  for (const auto& row : rows) {
    for (const auto& [name, value] : row.stats) stat_names.insert(name);
  }
  out << "instance_id,algorithm,rep,elapsed_s,terminated_by,optimal_value";
  for (const auto& name : stat_names) out << ',' << name;
  out << '\n';
  for (const auto& row : rows) {
    out << row.instance_id << ',' << row.algorithm << ',' << row.rep << ','
        << format_stat(row.elapsed_s, 6) << ',' << to_string(row.terminated_by) << ',';
    if (row.terminated_by == Termination::optimal) out << row.optimal_value;
    for (const auto& name : stat_names) {
      out << ',';
      if (const auto it = row.stats.find(name); it != row.stats.end()) out << it->second;
    }
    out << '\n';
  }
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << std::left << std::setw(20) << "dataset" << std::setw(8) << "alg" << std::right
      << std::setw(8) << "fin" << std::setw(12) << "avg" << std::setw(12) << "sd"
      << std::setw(12) << "max" << '\n';
  for (const auto& s : summary) {
    out << std::left << std::setw(20) << s.dataset << std::setw(8) << s.algorithm << std::right
        << std::setw(8) << (std::to_string(s.fin) + "/" + std::to_string(s.runs))
        << std::setw(12) << format_stat(s.avg) << std::setw(12) << format_stat(s.sd)
        << std::setw(12) << format_stat(s.max) << '\n';
  }
}

}  // namespace ukp
