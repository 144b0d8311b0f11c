#include "ukp_cli/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ukp/bench.hpp"
#include "ukp/colgen.hpp"
#include "ukp/core.hpp"
#include "ukp/dominance.hpp"
#include "ukp/gen.hpp"

namespace ukp::cli {

namespace {

using nlohmann::ordered_json;

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<double> timeout;
  std::uint64_t seed{0};
  std::string out;
  std::string format{"json"};
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
auto parse_input(const std::string& path, F&& parse) {
  try {
    return parse(read_text(path));
  } catch (const InputError&) {
    throw;
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

ordered_json report_header(std::string_view command, ordered_json config) {
  ordered_json j;
  j["tool"] = "ukp";
  j["version"] = std::string(kVersion);
  j["command"] = std::string(command);
  j["config"] = std::move(config);
  return j;
}

ordered_json instance_json(const std::string& path, const std::string& text, const Instance& inst) {
  return {{"path", path},
          {"checksum", hex64(fnv1a64(text))},
          {"n", inst.size()},
          {"capacity", inst.capacity()}};
}

void write_output(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

Deadline deadline_from(std::optional<double> timeout) {
  return timeout ? Deadline(Seconds(*timeout)) : Deadline{};
}

// ---------------------------------------------------------------------------

int cmd_solve(const Globals& g, const std::string& path, const std::string& alg_name,
              bool with_stats, std::ostream& out) {
  const Algorithm alg = parse_algorithm(alg_name);
  std::string text;
  const Instance inst = parse_input(path, [&](std::string t) {
    text = std::move(t);
    return parse_ukp_instance(text);
  });
  const SolverOutcome r = run_solver(alg, inst, deadline_from(g.timeout));
  const bool timed_out = r.terminated_by == Termination::timeout;

  if (g.format == "csv") {
    std::ostringstream s;
    s << "instance,checksum,algorithm,timeout_s,elapsed_s,terminated_by,optimal_value,version\n"
      << path << ',' << hex64(fnv1a64(text)) << ',' << alg_name << ','
      << (g.timeout ? format_stat(*g.timeout, 6) : "") << ',' << format_stat(r.elapsed.count(), 6)
      << ',' << to_string(r.terminated_by) << ',';
    if (!timed_out) s << r.optimal_value;
    s << ',' << kVersion << '\n';
    write_output(g.out, s.str(), out);
    return timed_out ? kTimeout : kOk;
  }

  ordered_json config{{"file", path},
                      {"alg", alg_name},
                      {"timeout_s", g.timeout ? ordered_json(*g.timeout) : ordered_json(nullptr)},
                      {"stats", with_stats},
                      {"format", g.format}};
  ordered_json j = report_header("solve", std::move(config));
  j["instance"] = instance_json(path, text, inst);
  j["terminated_by"] = std::string(to_string(r.terminated_by));
  j["elapsed_s"] = r.elapsed.count();
  if (timed_out) {
    j["optimal_value"] = nullptr;
    j["best_value_found"] = r.optimal_value;
  } else {
    j["optimal_value"] = r.optimal_value;
    ordered_json items = ordered_json::array();
    for (const auto& [index, copies] : r.solution.counts()) {
      items.push_back({{"index", index},
                       {"weight", inst[index].weight},
                       {"profit", inst[index].profit},
                       {"copies", copies}});
    }
    j["solution"] = {{"weight", r.solution.total_weight()},
                     {"profit", r.solution.total_profit()},
                     {"items", std::move(items)}};
  }
  if (with_stats) j["stats"] = r.stats;
  write_output(g.out, j.dump(2) + "\n", out);
  return timed_out ? kTimeout : kOk;
}

int cmd_analyze(const Globals& g, const std::string& path, const std::string& level_name,
                bool periodicity, const std::string& reduced_path, std::ostream& out) {
  std::vector<DominanceLevel> levels;
  if (level_name.empty()) {
    levels = {DominanceLevel::simple, DominanceLevel::multiple, DominanceLevel::collective};
  } else {
    levels = {parse_dominance_level(level_name)};
  }
  std::string text;
  const Instance inst = parse_input(path, [&](std::string t) {
    text = std::move(t);
    return parse_ukp_instance(text);
  });

  ordered_json config{{"file", path},
                      {"dominance", level_name.empty() ? "all" : level_name},
                      {"periodicity", periodicity},
                      {"reduced", reduced_path}};
  ordered_json j = report_header("analyze", std::move(config));
  j["instance"] = instance_json(path, text, inst);
  ordered_json dom = ordered_json::array();
  for (const auto level : levels) {
    const auto report = remove_dominated(inst, level);
    ordered_json removed = ordered_json::array();
    for (const auto i : report.removed) {
      removed.push_back({{"index", i}, {"weight", inst[i].weight}, {"profit", inst[i].profit}});
    }
    dom.push_back({{"level", std::string(to_string(level))},
                   {"removed", std::move(removed)},
                   {"survivors", report.survivors.size()},
                   {"elapsed_s", report.elapsed.count()}});
    if (!reduced_path.empty() && levels.size() == 1) {
      write_ukp_file(reduced_path, reduced_instance(inst, report));
    }
  }
  j["dominance"] = std::move(dom);
  if (periodicity) {
    const auto pb = periodicity_bound(inst);
    j["periodicity"] = {{"best_item_index", pb.best_item_index},
                        {"y_dprime", pb.y_dprime},
                        {"y_dprime_saturated", pb.y_dprime > inst.capacity()},
                        {"reduced_capacity", pb.reduced_capacity},
                        {"fill_copies", pb.fill_copies}};
  }
  write_output(g.out, j.dump(2) + "\n", out);
  return kOk;
}

std::string render_generated(const GenSpec& spec, const Instance& inst) {
  std::ostringstream s;
  s << "# ukp " << kVersion << " generate dist=" << to_string(spec.distribution)
    << " n=" << inst.size() << " seed=" << spec.seed;
  if (spec.preset) s << " preset=" << *spec.preset;
  const std::pair<const char*, const std::optional<std::int64_t>*> fields[] = {
      {"w_min", &spec.w_min}, {"w_max", &spec.w_max}, {"c_min", &spec.c_min},
      {"c_max", &spec.c_max}, {"alpha", &spec.alpha}, {"p_max", &spec.p_max}};
  for (const auto& [name, value] : fields) {
    if (*value) s << ' ' << name << '=' << **value;
  }
  s << '\n' << render_ukp_instance(inst);
  return s.str();
}

int cmd_generate(const Globals& g, GenSpec spec, const std::string& dist, std::ostream& out) {
  spec.distribution = parse_distribution(dist);
  spec.seed = g.seed;
  const Instance inst = generate(spec);
  write_output(g.out, render_generated(spec, inst), out);
  return kOk;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> paths;
  for (const auto& pattern : patterns) {
    glob_t gl{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &gl);
    if (rc == 0) {
      for (std::size_t i = 0; i < gl.gl_pathc; ++i) paths.emplace_back(gl.gl_pathv[i]);
    }
    globfree(&gl);
    if (rc != 0) throw InputError("no instance matches '" + pattern + "'");
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

int cmd_bench(const Globals& g, const std::vector<std::string>& patterns,
              const std::string& algs, int reps, bool median, int parallel, std::ostream& out,
              std::ostream& err) {
  const auto algorithms = parse_algorithm_list(algs);
  const auto paths = expand_globs(patterns);
  std::vector<BenchInstance> instances;
  for (const auto& path : paths) {
    instances.push_back(parse_input(path, [&](const std::string&) {
      return std::move(load_bench_instances({path}).front());
    }));
  }

  BenchOptions options;
  options.timeout = Seconds(g.timeout.value_or(1800.0));
  options.repetitions = reps;
  options.parallel = parallel;
  const std::string started = iso8601_now();
  auto rows = run_matrix(instances, algorithms, options);
  if (median) rows = collapse_median(rows);
  const auto summary = summarize(rows);
  const auto disagreements = find_disagreements(rows);

  std::ostringstream csv;
  write_csv(csv, rows);
  write_output(g.out, csv.str(), out);

  std::ostream& table = g.out.empty() ? err : out;
  write_summary_table(table, summary);

  if (!g.out.empty()) {
    ordered_json config{{"instances", patterns},
                        {"algs", algs},
                        {"timeout_s", options.timeout.count()},
                        {"reps", reps},
                        {"median", median},
                        {"parallel", parallel}};
    ordered_json j = report_header("bench", std::move(config));
    j["started_at"] = started;
    j["finished_at"] = iso8601_now();
    ordered_json inst_json = ordered_json::array();
    for (const auto& inst : instances) {
      inst_json.push_back({{"id", inst.id},
                           {"dataset", inst.dataset},
                           {"checksum", hex64(inst.checksum)},
                           {"n", inst.instance.size()},
                           {"capacity", inst.instance.capacity()}});
    }
    j["instances"] = std::move(inst_json);
    ordered_json sum_json = ordered_json::array();
    for (const auto& s : summary) {
      auto opt = [](std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
      sum_json.push_back({{"dataset", s.dataset},
                          {"algorithm", s.algorithm},
                          {"runs", s.runs},
                          {"fin", s.fin},
                          {"avg", opt(s.avg)},
                          {"sd", opt(s.sd)},
                          {"max", opt(s.max)}});
    }
    j["summary"] = std::move(sum_json);
    ordered_json errors = ordered_json::array();
    for (const auto& row : rows) {
      if (row.terminated_by == Termination::error) {
        errors.push_back({{"instance_id", row.instance_id},
                          {"algorithm", row.algorithm},
                          {"rep", row.rep},
                          {"error", row.error}});
      }
    }
    j["errors"] = std::move(errors);
    j["disagreements"] = disagreements.size();
    const auto sidecar = std::filesystem::path(g.out).replace_extension(".json").string();
    write_output(sidecar, j.dump(2) + "\n", out);
  }

  for (const auto& d : disagreements) {
    err << "disagreement on " << d.instance_id << ": " << d.algorithm_a << '=' << d.value_a
        << ", " << d.algorithm_b << '=' << d.value_b << '\n';
  }
  return disagreements.empty() ? kOk : kInternal;
}

int cmd_colgen(const Globals& g, const std::string& path, const std::string& pricer,
               const std::string& sort, const std::string& profit, const std::string& trace_path,
               std::ostream& out, std::ostream& err) {
  ColGenConfig config;
  config.variant = {parse_pricing_sort(sort), parse_pricing_profit(profit), parse_pricer(pricer)};
  if (g.timeout) config.pricing_timeout = Seconds(*g.timeout);
  if (config.variant.pricer == Pricer::mtu1 && config.variant.sort == PricingSort::weight) {
    throw CLI::ValidationError("--sort", "the mtu1 pricer requires --sort efficiency");
  }
  std::string text;
  const CspInstance inst = parse_input(path, [&](std::string t) {
    text = std::move(t);
    return parse_bpp_instance(text);
  });

  ordered_json cfg{{"file", path},
                   {"pricer", pricer},
                   {"sort", sort},
                   {"profit", profit},
                   {"pricing_timeout_s", g.timeout ? ordered_json(*g.timeout) : ordered_json(nullptr)},
                   {"trace", trace_path}};
  ordered_json j = report_header("colgen", std::move(cfg));
  j["instance"] = {{"path", path},
                   {"checksum", hex64(fnv1a64(text))},
                   {"n", inst.sizes.size()},
                   {"capacity", inst.capacity}};

  int code = kOk;
  ColGenState state;
  try {
    state = column_generation(inst, config);
    j["status"] = "optimal";
  } catch (const ColGenError& e) {
    state = e.partial();
    const bool timeout = std::string_view(e.what()).find("timed out") != std::string_view::npos;
    j["status"] = timeout ? "timeout" : "error";
    j["error"] = e.what();
    err << e.what() << '\n';
    code = timeout ? kTimeout : kInternal;
  }
  j["lp_value"] = state.lp_value;
  j["iterations"] = state.iterations;
  j["total_pricing_s"] = state.total_pricing.count();
  j["master_s"] = state.total_master.count();
  j["patterns"] = state.patterns.size();

  if (!trace_path.empty()) {
    std::ostringstream t;
    t << "iteration,pricing_s,master_s,lp_value\n" << std::setprecision(17);
    for (const auto& row : state.trace) {
      t << row.iteration << ',' << format_stat(row.pricing_s, 6) << ','
        << format_stat(row.master_s, 6) << ',' << row.lp_value << '\n';
    }
    write_output(trace_path, t.str(), out);
  }
  write_output(g.out, j.dump(2) + "\n", out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unbounded knapsack solvers, analysis, generators, benchmarks and column generation",
               "ukp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Globals g;
  double timeout = -1;
  auto* timeout_opt = app.add_option("--timeout", timeout, "Time limit in seconds")
                          ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Generator seed");
  app.add_option("--out,-o", g.out, "Write the report to this file instead of stdout");
  app.add_option("--format", g.format, "Single-run report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.fallthrough();

  std::string file;
  std::string alg = "oso";
  bool stats = false;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("file", file, "Instance file")->required();
  solve->add_option("--alg", alg, "Solver")
      ->check(CLI::IsMember({"naive", "oso", "tso", "gfdp", "mtu1", "mtu2"}));
  solve->add_flag("--stats", stats, "Include solver counters");

  std::string level;
  bool periodicity = false;
  std::string reduced;
  auto* analyze = app.add_subcommand("analyze", "Dominance census and periodicity bound");
  analyze->add_option("file", file, "Instance file")->required();
  analyze->add_option("--dominance", level, "simple, multiple or collective (default: all)")
      ->check(CLI::IsMember({"simple", "multiple", "collective"}));
  analyze->add_flag("--periodicity", periodicity, "Report y'' and the reduced capacity");
  analyze->add_option("--reduced", reduced, "Write the instance without dominated items")
      ->needs(analyze->get_option("--dominance"));

  GenSpec spec;
  std::string dist;
  std::string preset;
  auto* gen = app.add_subcommand("generate", "Generate an instance");
  gen->add_option("--dist", dist, "Distribution (rr, ss and sc are short forms)")
      ->required()
      ->check(CLI::IsMember({"realistic_random", "rr", "breq", "subset_sum", "ss", "strong_corr", "sc"}));
  gen->add_option("--n", spec.n, "Number of items")->check(CLI::PositiveNumber);
  gen->add_option("--preset", preset, "pyasukp-ss, hard-sc or breq-128-16");
  gen->add_option("--w-min", spec.w_min);
  gen->add_option("--w-max", spec.w_max);
  gen->add_option("--c-min", spec.c_min);
  gen->add_option("--c-max", spec.c_max);
  gen->add_option("--alpha", spec.alpha);
  gen->add_option("--p-max", spec.p_max);

  std::vector<std::string> patterns;
  std::string algs = "oso,tso,gfdp,mtu1,mtu2";
  int reps = 1;
  bool median = false;
  int parallel = 0;
  auto* bench = app.add_subcommand("bench", "Run a solver x instance matrix");
  bench->add_option("--instances", patterns, "Instance glob(s)")->required();
  bench->add_option("--algs", algs, "Comma separated solvers");
  bench->add_option("--reps", reps, "Repetitions per run")->check(CLI::PositiveNumber);
  bench->add_flag("--median", median, "Keep the median-time repetition only");
  bench->add_option("--parallel", parallel, "Worker threads (default serial)")
      ->check(CLI::NonNegativeNumber);

  std::string pricer = "oso";
  std::string sort = "efficiency";
  std::string profit = "scaled";
  std::string trace;
  auto* colgen = app.add_subcommand("colgen", "LP relaxation of a cutting-stock instance");
  colgen->add_option("file", file, "BPP/CSP instance file")->required();
  colgen->add_option("--pricer", pricer)->check(CLI::IsMember({"oso", "mtu1"}));
  colgen->add_option("--sort", sort)->check(CLI::IsMember({"efficiency", "weight"}));
  colgen->add_option("--profit", profit)->check(CLI::IsMember({"native", "scaled"}));
  colgen->add_option("--trace", trace, "Per-iteration CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!timeout_opt->empty()) g.timeout = timeout;
    if (!preset.empty()) spec.preset = preset;
    if (gen->parsed() && spec.n == 0 && preset != "hard-sc") {
      throw CLI::RequiredError("--n");
    }

    if (solve->parsed()) return cmd_solve(g, file, alg, stats, out);
    if (analyze->parsed()) return cmd_analyze(g, file, level, periodicity, reduced, out);
    if (gen->parsed()) return cmd_generate(g, spec, dist, out);
    if (bench->parsed()) return cmd_bench(g, patterns, algs, reps, median, parallel, out, err);
    if (colgen->parsed()) return cmd_colgen(g, file, pricer, sort, profit, trace, out, err);
    return kUsage;
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return gen->parsed() ? kUsage : kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace ukp::cli
