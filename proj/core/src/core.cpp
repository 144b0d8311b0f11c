#include "ukp/core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace ukp {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

using Wide = __int128;

constexpr Wide kProfitLimit = std::numeric_limits<Profit>::max();

}  // namespace

int compare_efficiency(const Item& a, const Item& b) {
  const Wide lhs = static_cast<Wide>(a.profit) * b.weight;
  const Wide rhs = static_cast<Wide>(b.profit) * a.weight;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Instance::Instance(Weight capacity, std::vector<Item> items)
    : capacity_(capacity), items_(std::move(items)), w_min_(0), w_max_(0) {
  if (capacity_ < 1) throw InvalidInstance("capacity must be positive");
  if (items_.empty()) throw InvalidInstance("instance has no items");
  w_min_ = w_max_ = items_.front().weight;
  Profit p_max = 0;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.weight < 1) {
      throw InvalidInstance("non-positive weight for item " + std::to_string(i));
    }
    if (it.profit < 1) {
      throw InvalidInstance("non-positive profit for item " + std::to_string(i));
    }
    w_min_ = std::min(w_min_, it.weight);
    w_max_ = std::max(w_max_, it.weight);
    p_max = std::max(p_max, it.profit);
  }
  // Any feasible solution is worth at most c * max efficiency; DP cells and
  // bounds add one more item profit on top of that.
  const Item& b = items_[best_item(*this)];
  const Wide ceiling = static_cast<Wide>(capacity_) * b.profit / b.weight + p_max;
  if (ceiling > kProfitLimit) {
    throw InvalidInstance(
        "instance may overflow 63-bit profit arithmetic (capacity * best "
        "efficiency + max profit)");
  }
}

Instance Instance::with_capacity(Weight capacity) const {
  return Instance(capacity, items_);
}

void Solution::add(ItemIndex index, const Item& item, std::int64_t copies) {
  if (copies == 0) return;
  if (copies < 0) throw Error("negative copy count");
  counts_[index] += copies;
  weight_ += item.weight * copies;
  profit_ += item.profit * copies;
}

std::int64_t Solution::count(ItemIndex index) const {
  const auto it = counts_.find(index);
  return it == counts_.end() ? 0 : it->second;
}

Solution Solution::from_counts(const std::map<ItemIndex, std::int64_t>& counts,
                               const Instance& instance) {
  Solution s;
  for (const auto& [index, copies] : counts) {
    if (index >= instance.size()) {
      throw Error("unknown item index " + std::to_string(index));
    }
    s.add(index, instance[index], copies);
  }
  return s;
}

Evaluation evaluate(const Solution& solution, const Instance& instance) {
  Evaluation e;
  for (const auto& [index, copies] : solution.counts()) {
    if (index >= instance.size()) {
      throw Error("unknown item index " + std::to_string(index));
    }
    e.weight += instance[index].weight * copies;
    e.profit += instance[index].profit * copies;
  }
  e.feasible = e.weight <= instance.capacity();
  return e;
}

ItemIndex best_item(const Instance& instance) {
  const auto items = instance.items();
  ItemIndex best = 0;
  for (ItemIndex i = 1; i < items.size(); ++i) {
    const int cmp = compare_efficiency(items[i], items[best]);
    if (cmp > 0 || (cmp == 0 && items[i].weight < items[best].weight)) best = i;
  }
  return best;
}

std::vector<ItemIndex> efficiency_order(std::span<const Item> items) {
  std::vector<ItemIndex> order(items.size());
  std::iota(order.begin(), order.end(), ItemIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](ItemIndex a, ItemIndex b) {
    const int cmp = compare_efficiency(items[a], items[b]);
    if (cmp != 0) return cmp > 0;
    return items[a].weight < items[b].weight;
  });
  return order;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::optimal: return "optimal";
    case Termination::timeout: return "timeout";
    case Termination::error: return "error";
  }
  return "unknown";
}

Deadline::Deadline(Seconds budget)
    : unlimited_(false),
      budget_(budget),
      end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}

bool Deadline::expired() const {
  return !unlimited_ && Clock::now() >= end_;
}

Seconds Deadline::remaining() const {
  if (unlimited_) return Seconds(std::numeric_limits<double>::infinity());
  const auto left = end_ - Clock::now();
  return std::max(Seconds(0), std::chrono::duration_cast<Seconds>(left));
}

namespace {

std::int64_t parse_int(std::string_view token, std::size_t line,
                       const char* what) {
  std::int64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("malformed " + std::string(what) + " at line " +
                         std::to_string(line),
                     line);
  }
  return value;
}

std::int64_t parse_header(std::string_view line, std::string_view key,
                          std::size_t line_no) {
  const std::string prefix = std::string(key) + ": ";
  if (line.substr(0, prefix.size()) != prefix) {
    throw ParseError("expected '" + prefix + "<int>' at line " +
                         std::to_string(line_no),
                     line_no);
  }
  return parse_int(line.substr(prefix.size()), line_no, "header value");
}

}  // namespace

Instance parse_ukp_instance(std::string_view text) {
  enum class Stage { n, c, begin, items, end, done };
  Stage stage = Stage::n;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::vector<Item> items;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (eol == text.size()) break;
      continue;
    }

    switch (stage) {
      case Stage::n:
        n = parse_header(line, "n", line_no);
        if (n < 1) throw ParseError("n must be positive at line " + std::to_string(line_no), line_no);
        stage = Stage::c;
        break;
      case Stage::c:
        c = parse_header(line, "c", line_no);
        if (c < 1) throw ParseError("c must be positive at line " + std::to_string(line_no), line_no);
        stage = Stage::begin;
        break;
      case Stage::begin:
        if (line != "begin data") {
          throw ParseError("expected 'begin data' at line " + std::to_string(line_no), line_no);
        }
        stage = Stage::items;
        items.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n, 1 << 20)));
        break;
      case Stage::items: {
        if (line == "end data") {
          throw ParseError("n mismatch: expected " + std::to_string(n) +
                               " items, found " + std::to_string(items.size()) +
                               " at line " + std::to_string(line_no),
                           line_no);
        }
        const auto space = line.find(' ');
        if (space == std::string_view::npos) {
          throw ParseError("malformed item line at line " + std::to_string(line_no), line_no);
        }
        const auto w = parse_int(line.substr(0, space), line_no, "item weight");
        const auto p = parse_int(line.substr(space + 1), line_no, "item profit");
        if (w < 1) throw ParseError("non-positive weight at line " + std::to_string(line_no), line_no);
        if (p < 1) throw ParseError("non-positive profit at line " + std::to_string(line_no), line_no);
        items.push_back({w, p});
        if (static_cast<std::int64_t>(items.size()) == n) stage = Stage::end;
        break;
      }
      case Stage::end:
        if (line != "end data") {
          throw ParseError("n mismatch: expected 'end data' after " + std::to_string(n) +
                               " items at line " + std::to_string(line_no),
                           line_no);
        }
        stage = Stage::done;
        break;
      case Stage::done:
        throw ParseError("unexpected content after 'end data' at line " + std::to_string(line_no),
                         line_no);
    }
    if (eol == text.size()) break;
  }
  if (stage != Stage::done) {
    throw ParseError("unexpected end of document at line " + std::to_string(line_no), line_no);
  }
  try {
    return Instance(c, std::move(items));
  } catch (const InvalidInstance& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string render_ukp_instance(const Instance& instance) {
  std::ostringstream out;
  out << "n: " << instance.size() << '\n';
  out << "c: " << instance.capacity() << '\n';
  out << "begin data\n";
  for (const Item& it : instance.items()) out << it.weight << ' ' << it.profit << '\n';
  out << "end data\n";
  return out.str();
}

Instance read_ukp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ukp_instance(buf.str());
}

void write_ukp_file(const std::string& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << render_ukp_instance(instance);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ukp
