#include "ukp/colgen.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ukp/detail/mtu1.hpp"
#include "ukp/detail/step_off.hpp"

namespace ukp {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t parse_int(std::string_view token, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "' at line " +
                         std::to_string(line),
                     line);
  }
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

CspInstance parse_bpp_instance(std::string_view text) {
  CspInstance out;
  std::int64_t n = -1;
  bool have_capacity = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (n < 0) {
      if (tokens.size() != 1) throw ParseError("expected n at line " + std::to_string(line_no), line_no);
      n = parse_int(tokens[0], line_no);
      if (n < 1) throw ParseError("n must be positive at line " + std::to_string(line_no), line_no);
      continue;
    }
    if (!have_capacity) {
      if (tokens.size() != 1) {
        throw ParseError("expected the capacity at line " + std::to_string(line_no), line_no);
      }
      out.capacity = parse_int(tokens[0], line_no);
      if (out.capacity < 1) {
        throw ParseError("capacity must be positive at line " + std::to_string(line_no), line_no);
      }
      have_capacity = true;
      continue;
    }
    if (tokens.size() > 2) {
      throw ParseError("expected 'size [demand]' at line " + std::to_string(line_no), line_no);
    }
    if (static_cast<std::int64_t>(out.sizes.size()) == n) {
      throw ParseError("more than " + std::to_string(n) + " items at line " +
                           std::to_string(line_no),
                       line_no);
    }
    const Weight size = parse_int(tokens[0], line_no);
    const std::int64_t demand = tokens.size() == 2 ? parse_int(tokens[1], line_no) : 1;
    if (size < 1) throw ParseError("non-positive size at line " + std::to_string(line_no), line_no);
    if (size > out.capacity) {
      throw ParseError("size " + std::to_string(size) + " exceeds capacity " +
                           std::to_string(out.capacity) + " at line " + std::to_string(line_no),
                       line_no);
    }
    if (demand < 1) {
      throw ParseError("non-positive demand at line " + std::to_string(line_no), line_no);
    }
    out.sizes.push_back(size);
    out.demands.push_back(demand);
  }
  if (!have_capacity) throw ParseError("missing header", line_no);
  if (static_cast<std::int64_t>(out.sizes.size()) != n) {
    throw ParseError("n mismatch: header says " + std::to_string(n) + ", found " +
                         std::to_string(out.sizes.size()) + " items",
                     line_no);
  }
  return out;
}

CspInstance read_bpp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bpp_instance(buf.str());
}

Weight pattern_weight(const Pattern& pattern, const CspInstance& instance) {
  Weight total = 0;
  for (std::size_t i = 0; i < pattern.multiplicities.size(); ++i) {
    total += pattern.multiplicities[i] * instance.sizes[i];
  }
  return total;
}

std::vector<Pattern> initial_patterns(const CspInstance& instance) {
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < instance.sizes.size(); ++i) {
    Pattern p{std::vector<std::int64_t>(instance.sizes.size(), 0)};
    p.multiplicities[i] = instance.capacity / instance.sizes[i];
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Master LP

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr std::int64_t kRefactorEvery = 64;
constexpr std::int64_t kDegenerateStreak = 50;
constexpr std::int64_t kMaxPivots = 1000000;
/// Artificial columns cost 2: every dual is at most 1 once each row is covered
/// by some pattern, so they never appear in an optimum of a feasible master.
constexpr double kArtificialCost = 2.0;

}  // namespace

MasterLp::MasterLp(const CspInstance& instance) : m_(instance.sizes.size()) {
  demand_.assign(instance.demands.begin(), instance.demands.end());
  for (std::size_t i = 0; i < m_; ++i) {
    std::vector<double> a(m_, 0.0);
    a[i] = 1.0;
    columns_.push_back({a, kArtificialCost, true});
  }
  for (std::size_t i = 0; i < m_; ++i) {
    std::vector<double> a(m_, 0.0);
    a[i] = -1.0;
    columns_.push_back({a, 0.0, false});
  }
  basis_.resize(m_);
  std::iota(basis_.begin(), basis_.end(), std::size_t{0});
  is_basic_.assign(columns_.size(), 0);
  for (std::size_t r = 0; r < m_; ++r) is_basic_[r] = 1;
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
  x_basic_ = demand_;
  compute_duals();
}

void MasterLp::add_pattern(const Pattern& pattern) {
  if (pattern.multiplicities.size() != m_) throw Error("pattern length mismatch");
  std::vector<double> a(pattern.multiplicities.begin(), pattern.multiplicities.end());
  columns_.push_back({std::move(a), 1.0, false});
  is_basic_.push_back(0);
}

std::vector<double> MasterLp::ftran(const std::vector<double>& a) const {
  std::vector<double> u(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    double s = 0;
    const double* row = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) s += row[k] * a[k];
    u[r] = s;
  }
  return u;
}

void MasterLp::compute_duals() {
  raw_duals_.assign(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double cb = columns_[basis_[r]].cost;
    if (cb == 0.0) continue;
    const double* row = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) raw_duals_[k] += cb * row[k];
  }
  duals_.resize(m_);
  for (std::size_t k = 0; k < m_; ++k) duals_[k] = std::max(0.0, raw_duals_[k]);
  objective_ = 0;
  for (std::size_t r = 0; r < m_; ++r) objective_ += columns_[basis_[r]].cost * x_basic_[r];
}

void MasterLp::refactor() {
  // Gauss-Jordan inversion of the basis matrix with partial pivoting.
  std::vector<double> b(m_ * m_);
  for (std::size_t r = 0; r < m_; ++r) {
    const auto& a = columns_[basis_[r]].a;
    for (std::size_t k = 0; k < m_; ++k) b[k * m_ + r] = a[k];
  }
  std::vector<double> inv(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) inv[r * m_ + r] = 1.0;
  for (std::size_t col = 0; col < m_; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m_; ++r) {
      if (std::abs(b[r * m_ + col]) > std::abs(b[piv * m_ + col])) piv = r;
    }
    if (std::abs(b[piv * m_ + col]) < 1e-12) throw Error("singular basis during refactorization");
    if (piv != col) {
      for (std::size_t k = 0; k < m_; ++k) {
        std::swap(b[piv * m_ + k], b[col * m_ + k]);
        std::swap(inv[piv * m_ + k], inv[col * m_ + k]);
      }
    }
    const double d = b[col * m_ + col];
    for (std::size_t k = 0; k < m_; ++k) {
      b[col * m_ + k] /= d;
      inv[col * m_ + k] /= d;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == col) continue;
      const double f = b[r * m_ + col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        b[r * m_ + k] -= f * b[col * m_ + k];
        inv[r * m_ + k] -= f * inv[col * m_ + k];
      }
    }
  }
  binv_ = std::move(inv);
  x_basic_ = ftran(demand_);
  for (double& v : x_basic_) {
    if (v < 0 && v > -1e-9) v = 0;
  }
  since_refactor_ = 0;
}

void MasterLp::solve() {
  bool bland = false;
  std::int64_t degenerate = 0;
  std::int64_t local_pivots = 0;
  while (true) {
    compute_duals();
    // Entering column: most negative reduced cost, or the lowest index with a
    // negative one while anti-cycling.
    std::size_t enter = columns_.size();
    double best_rc = -kCostTol;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (is_basic_[j] || columns_[j].artificial) continue;
      const auto& a = columns_[j].a;
      double rc = columns_[j].cost;
      for (std::size_t k = 0; k < m_; ++k) rc -= raw_duals_[k] * a[k];
      if (rc < best_rc) {
        enter = j;
        if (bland) break;
        best_rc = rc;
      }
    }
    if (enter == columns_.size()) break;

    const auto u = ftran(columns_[enter].a);
    std::size_t leave = m_;
    double best_t = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (u[r] <= kPivotTol) continue;
      const double t = std::max(0.0, x_basic_[r]) / u[r];
      bool take = leave == m_ || t < best_t - 1e-12;
      if (!take && t <= best_t + 1e-12) {
        take = bland ? basis_[r] < basis_[leave] : u[r] > u[leave];
      }
      if (take) {
        leave = r;
        best_t = t;
      }
    }
    if (leave == m_) throw Error("master LP is unbounded");

    if (best_t <= 1e-12) {
      if (++degenerate >= kDegenerateStreak) bland = true;
    } else {
      degenerate = 0;
      bland = false;
    }

    for (std::size_t r = 0; r < m_; ++r) {
      if (r != leave) x_basic_[r] -= best_t * u[r];
    }
    x_basic_[leave] = best_t;
    const double pivot = u[leave];
    double* prow = &binv_[leave * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] /= pivot;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave || u[r] == 0.0) continue;
      double* row = &binv_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= u[r] * prow[k];
    }
    is_basic_[basis_[leave]] = 0;
    is_basic_[enter] = 1;
    basis_[leave] = enter;
    ++pivots_;
    if (++local_pivots > kMaxPivots) {
      throw Error("master LP exceeded " + std::to_string(kMaxPivots) + " pivots");
    }
    if (++since_refactor_ >= kRefactorEvery) refactor();
  }
  refactor();
  compute_duals();
  for (std::size_t r = 0; r < m_; ++r) {
    if (columns_[basis_[r]].artificial && x_basic_[r] > 1e-9) {
      throw Error("patterns do not cover the demand of size index " + std::to_string(basis_[r]));
    }
  }
}

std::vector<double> MasterLp::primal() const {
  std::vector<double> out(columns_.size() - 2 * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] >= 2 * m_) out[basis_[r] - 2 * m_] = x_basic_[r];
  }
  return out;
}

MasterResult solve_master(const std::vector<Pattern>& patterns, const CspInstance& instance) {
  MasterLp lp(instance);
  for (const auto& p : patterns) lp.add_pattern(p);
  lp.solve();
  return {lp.objective(), lp.primal(), lp.duals()};
}

// ---------------------------------------------------------------------------
// Pricing

std::string_view to_string(PricingSort s) {
  return s == PricingSort::efficiency ? "efficiency" : "weight";
}
std::string_view to_string(PricingProfit p) {
  return p == PricingProfit::scaled ? "scaled" : "native";
}
std::string_view to_string(Pricer p) { return p == Pricer::oso ? "oso" : "mtu1"; }

PricingSort parse_pricing_sort(std::string_view name) {
  if (name == "efficiency") return PricingSort::efficiency;
  if (name == "weight") return PricingSort::weight;
  throw Error("unknown pricing sort '" + std::string(name) + "'");
}
PricingProfit parse_pricing_profit(std::string_view name) {
  if (name == "scaled") return PricingProfit::scaled;
  if (name == "native") return PricingProfit::native;
  throw Error("unknown profit mode '" + std::string(name) + "'");
}
Pricer parse_pricer(std::string_view name) {
  if (name == "oso") return Pricer::oso;
  if (name == "mtu1") return Pricer::mtu1;
  throw Error("unknown pricer '" + std::string(name) + "'");
}

namespace {

template <typename P>
struct PricingRun {
  P value{0};
  std::vector<std::int64_t> counts;  // per position of the pricing order
  bool timed_out{false};
};

template <typename P>
PricingRun<P> run_kernel(Pricer pricer, std::span<const Weight> w, std::span<const P> p,
                         Weight c, const Deadline& deadline) {
  PricingRun<P> out;
  if (pricer == Pricer::oso) {
    auto run = detail::ordered_step_off<P>(w, p, c, true, false, deadline);
    out.timed_out = run.timed_out;
    if (!run.timed_out) {
      out.value = run.opt;
      out.counts = detail::backtrack_positions<P>(run.g, run.d, w, p, run.y_opt);
    }
    return out;
  }
  auto seed = detail::greedy_counts(w, c);
  P incumbent{0};
  for (std::size_t k = 0; k < seed.size(); ++k) incumbent += static_cast<P>(seed[k]) * p[k];
  auto run = detail::depth_first_bb<P>(w, p, c, incumbent, std::move(seed), deadline);
  out.timed_out = run.timed_out;
  out.value = run.best;
  out.counts = std::move(run.best_counts);
  return out;
}

/// Positions ordered for the kernel; `more_efficient(a, b)` compares profits
/// per unit of weight of two candidate indices.
template <typename Better>
std::vector<std::size_t> pricing_order(std::vector<std::size_t> idx, const CspInstance& inst,
                                       PricingSort sort, Better more_efficient) {
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (sort == PricingSort::efficiency) {
      if (more_efficient(a, b)) return true;
      if (more_efficient(b, a)) return false;
    }
    if (inst.sizes[a] != inst.sizes[b]) return inst.sizes[a] < inst.sizes[b];
    return a < b;
  });
  return idx;
}

}  // namespace

PricingResult price(const std::vector<double>& duals, const CspInstance& instance,
                    const PricingVariant& variant, const Deadline& deadline) {
  if (variant.pricer == Pricer::mtu1 && variant.sort == PricingSort::weight) {
    throw Error("the mtu1 pricer requires the efficiency order");
  }
  const auto start = Clock::now();
  const std::size_t n = instance.sizes.size();
  if (duals.size() != n) throw Error("dual vector length mismatch");

  PricingResult result;
  std::vector<std::size_t> order;
  std::vector<Weight> w;
  std::vector<std::int64_t> counts;
  bool improving = false;

  if (variant.profit == PricingProfit::scaled) {
    std::vector<std::int64_t> scaled(n, 0);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = static_cast<std::int64_t>(std::floor(duals[i] * kProfitScale));
      if (scaled[i] > 0) kept.push_back(i);
    }
    order = pricing_order(std::move(kept), instance, variant.sort, [&](std::size_t a, std::size_t b) {
      return static_cast<__int128>(scaled[a]) * instance.sizes[b] >
             static_cast<__int128>(scaled[b]) * instance.sizes[a];
    });
    std::vector<Profit> p;
    for (const auto i : order) {
      w.push_back(instance.sizes[i]);
      p.push_back(scaled[i]);
    }
    if (!order.empty()) {
      auto run = run_kernel<Profit>(variant.pricer, w, p, instance.capacity, deadline);
      result.timed_out = run.timed_out;
      counts = std::move(run.counts);
      const auto threshold = static_cast<Profit>(kProfitScale) + (Profit{1} << 10);
      improving = !run.timed_out && run.value > threshold;
    }
  } else {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      if (duals[i] > 0) kept.push_back(i);
    }
    order = pricing_order(std::move(kept), instance, variant.sort, [&](std::size_t a, std::size_t b) {
      return duals[a] * static_cast<double>(instance.sizes[b]) >
             duals[b] * static_cast<double>(instance.sizes[a]);
    });
    std::vector<double> p;
    for (const auto i : order) {
      w.push_back(instance.sizes[i]);
      p.push_back(duals[i]);
    }
    if (!order.empty()) {
      auto run = run_kernel<double>(variant.pricer, w, p, instance.capacity, deadline);
      result.timed_out = run.timed_out;
      counts = std::move(run.counts);
      improving = !run.timed_out && run.value > 1.0 + kImprovingEpsilon;
    }
  }

  if (!counts.empty() && !result.timed_out) {
    Pattern pattern{std::vector<std::int64_t>(n, 0)};
    for (std::size_t k = 0; k < order.size(); ++k) {
      pattern.multiplicities[order[k]] = counts[k];
      result.value += static_cast<double>(counts[k]) * duals[order[k]];
    }
    if (improving) result.pattern = std::move(pattern);
  }
  result.elapsed = Clock::now() - start;
  return result;
}

ColGenState column_generation(const CspInstance& instance, const ColGenConfig& config) {
  const auto n = static_cast<std::int64_t>(instance.sizes.size());
  const std::int64_t cap = config.iteration_cap > 0 ? config.iteration_cap : 50 * n;

  ColGenState state;
  state.patterns = initial_patterns(instance);
  MasterLp lp(instance);
  for (const auto& p : state.patterns) lp.add_pattern(p);

  while (true) {
    if (state.iterations >= cap) {
      throw ColGenError("column generation exceeded " + std::to_string(cap) + " iterations",
                        std::move(state));
    }
    const auto master_start = Clock::now();
    lp.solve();
    const Seconds master_time = Clock::now() - master_start;
    ++state.iterations;
    state.total_master += master_time;
    state.lp_value = lp.objective();
    state.duals = lp.duals();

    const auto priced = price(state.duals, instance, config.variant,
                                config.pricing_timeout ? Deadline(*config.pricing_timeout) : Deadline{});
    state.pricing_times.push_back(priced.elapsed);
    state.total_pricing += priced.elapsed;
    state.trace.push_back(
        {state.iterations, priced.elapsed.count(), master_time.count(), state.lp_value});
    if (priced.timed_out) throw ColGenError("pricing timed out", std::move(state));
    if (!priced.pattern) break;
    lp.add_pattern(*priced.pattern);
    state.patterns.push_back(*priced.pattern);
  }
  return state;
}

}  // namespace ukp
