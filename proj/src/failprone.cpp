#include "gq/failprone.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gq/errors.hpp"

namespace gq {

GridParams grid_params(std::span<const int> cardinalities, int i, const ParamOverrides& ov) {
  if (i < 0 || i >= static_cast<int>(cardinalities.size())) {
    throw std::out_of_range("belief attribute index out of range");
  }
  GridParams g;
  g.belief = i;
  g.k = cardinalities[i];
  if (g.k < 4) {
    throw UnsupportedCardinality("belief attribute " + std::to_string(i) + " has " + std::to_string(g.k) +
                                 " values; at least 4 are required");
  }
  g.n = universe_size(cardinalities);
  g.slice = g.n / g.k;
  g.default_f = ceil_div(g.k, 3) - 1;
  g.default_alpha = ceil_div(g.n, 6 * g.k) - 1;
  g.f = ov.f.value_or(g.default_f);
  g.alpha = ov.alpha.value_or(g.default_alpha);
  if (g.f < 0 || g.f > g.k) {
    throw std::invalid_argument("full-value count override out of range");
  }
  if (g.alpha < g.default_alpha) {
    throw std::invalid_argument("alpha override may only increase the default");
  }
  if (g.alpha > g.slice) {
    throw std::invalid_argument("alpha exceeds the processes per attribute value");
  }
  g.p = g.k - g.f;
  g.epsilon = ratio(g.k, 3) - g.f;
  g.delta = ratio(g.n, 6 * g.k) - g.alpha;
  return g;
}

GridParams grid_params(const AttributeSchema& schema, int i, const ParamOverrides& ov) {
  const auto ks = schema.cardinalities();
  return grid_params(std::span<const int>(ks), i, ov);
}

BigInt failprone_count(const GridParams& g) {
  BigInt per = binomial(g.slice, g.alpha);
  BigInt out = binomial(g.k, g.f);
  for (std::int64_t t = 0; t < g.p; ++t) {
    out *= per;
  }
  return out;
}

std::int64_t cell_size(const GridParams& gi, const GridParams& gj) {
  if (gi.n != gj.n) {
    throw std::invalid_argument("parameters from different universes");
  }
  return gi.n / (gi.k * gj.k);
}

std::int64_t full_union_cardinality(const GridParams& gi, const GridParams& gj) {
  return gi.slice * gi.f + gj.slice * gj.f - cell_size(gi, gj) * gi.f * gj.f;
}

std::int64_t intersection_bound(const GridParams& gi, const GridParams& gj) {
  return cell_size(gi, gj) * gi.f * gj.f + gi.p * gi.alpha + gj.p * gj.alpha;
}

void validate(const Universe& u, const GridParams& g, const FailproneDescriptor& desc) {
  if (desc.belief != g.belief) {
    throw InvalidDescriptor("descriptor belief does not match parameters");
  }
  if (static_cast<std::int64_t>(desc.full.size()) != g.f) {
    throw InvalidDescriptor("expected " + std::to_string(g.f) + " full values, got " +
                            std::to_string(desc.full.size()));
  }
  std::vector<char> is_full(static_cast<std::size_t>(g.k), 0);
  for (int a : desc.full) {
    if (a < 0 || a >= g.k || is_full[a]) {
      throw InvalidDescriptor("full value " + std::to_string(a) + " out of range or repeated");
    }
    is_full[a] = 1;
  }
  if (static_cast<std::int64_t>(desc.partial.size()) != g.p) {
    throw InvalidDescriptor("expected partial choices for " + std::to_string(g.p) + " values");
  }
  for (const auto& [a, xs] : desc.partial) {
    if (a < 0 || a >= g.k || is_full[a]) {
      throw InvalidDescriptor("partial value " + std::to_string(a) + " is out of range or also full");
    }
    if (static_cast<std::int64_t>(xs.size()) != g.alpha) {
      throw InvalidDescriptor("value " + std::to_string(a) + " needs exactly " + std::to_string(g.alpha) +
                              " partial processes");
    }
    std::set<ProcessId> seen;
    for (ProcessId p : xs) {
      if (p < 0 || p >= u.n() || u.coord(p, g.belief) != a || !seen.insert(p).second) {
        throw InvalidDescriptor("process " + std::to_string(p) + " is not a distinct member of value " +
                                std::to_string(a));
      }
    }
  }
}

ProcessSet materialize(const Universe& u, const GridParams& g, const FailproneDescriptor& desc) {
  validate(u, g, desc);
  ProcessSet out = u.restrict(Predicate().where(g.belief, desc.full));
  for (const auto& [a, xs] : desc.partial) {
    for (ProcessId p : xs) {
      out.insert(p);
    }
  }
  return out;
}

ProcessSet canonical_quorum(const Universe& u, const GridParams& g, const FailproneDescriptor& desc) {
  return materialize(u, g, desc).complement();
}

namespace {

// Advances a strictly increasing k-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int t = k - 1;
  while (t >= 0 && c[t] == n - k + t) {
    --t;
  }
  if (t < 0) {
    return false;
  }
  ++c[t];
  for (int s = t + 1; s < k; ++s) {
    c[s] = c[s - 1] + 1;
  }
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  return c;
}

std::vector<std::vector<ProcessId>> slices_of(const Universe& u, int attribute) {
  std::vector<std::vector<ProcessId>> out(static_cast<std::size_t>(u.k(attribute)));
  for (ProcessId p = 0; p < u.n(); ++p) {
    out[u.coord(p, attribute)].push_back(p);
  }
  return out;
}

}  // namespace

bool for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  if (k < 0 || k > n) {
    return true;
  }
  auto c = first_combination(k);
  do {
    if (!visit(c)) {
      return false;
    }
  } while (next_combination(c, n));
  return true;
}

FailproneEnumerator::FailproneEnumerator(const Universe& u, GridParams g)
    : g_(std::move(g)), slices_(slices_of(u, g_.belief)) {
  if (g_.n != u.n()) {
    throw std::invalid_argument("parameters do not belong to this universe");
  }
}

void FailproneEnumerator::reset_partials() {
  rest_.clear();
  std::size_t t = 0;
  for (int a = 0; a < g_.k; ++a) {
    if (t < full_.size() && full_[t] == a) {
      ++t;
    } else {
      rest_.push_back(a);
    }
  }
  picks_.assign(rest_.size(), first_combination(static_cast<int>(g_.alpha)));
}

void FailproneEnumerator::fill(FailproneDescriptor& out) const {
  out.belief = g_.belief;
  out.full = full_;
  out.partial.clear();
  for (std::size_t r = 0; r < rest_.size(); ++r) {
    std::vector<ProcessId> xs;
    for (int pos : picks_[r]) {
      xs.push_back(slices_[rest_[r]][pos]);
    }
    out.partial.emplace(rest_[r], std::move(xs));
  }
}

bool FailproneEnumerator::next(FailproneDescriptor& out) {
  if (done_) {
    return false;
  }
  if (!started_) {
    started_ = true;
    full_ = first_combination(static_cast<int>(g_.f));
    reset_partials();
    fill(out);
    return true;
  }
  const int slice = static_cast<int>(g_.slice);
  for (auto r = static_cast<std::ptrdiff_t>(picks_.size()) - 1; r >= 0; --r) {
    if (next_combination(picks_[r], slice)) {
      for (std::size_t s = static_cast<std::size_t>(r) + 1; s < picks_.size(); ++s) {
        picks_[s] = first_combination(static_cast<int>(g_.alpha));
      }
      fill(out);
      return true;
    }
  }
  if (!next_combination(full_, static_cast<int>(g_.k))) {
    done_ = true;
    return false;
  }
  reset_partials();
  fill(out);
  return true;
}

bool CanonicalQuorumEnumerator::next(ProcessSet& out) {
  if (!inner_.next(cur_)) {
    return false;
  }
  out = canonical_quorum(*u_, g_, cur_);
  return true;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: empty range");
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  std::uint64_t x = rng();
  while (x > limit) {
    x = rng();
  }
  return x % bound;
}

namespace {

// Selection sampling: a uniformly random k-subset of [0, n), ascending.
std::vector<int> sample_subset(std::mt19937_64& rng, int n, int k) {
  std::vector<int> out;
  for (int t = 0; t < n && static_cast<int>(out.size()) < k; ++t) {
    const auto remaining = static_cast<std::uint64_t>(n - t);
    const auto needed = static_cast<std::uint64_t>(k - static_cast<int>(out.size()));
    if (uniform_below(rng, remaining) < needed) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

FailproneDescriptor sample_failprone(const Universe& u, const GridParams& g, std::mt19937_64& rng) {
  FailproneDescriptor out;
  out.belief = g.belief;
  out.full = sample_subset(rng, static_cast<int>(g.k), static_cast<int>(g.f));
  std::vector<char> is_full(static_cast<std::size_t>(g.k), 0);
  for (int a : out.full) {
    is_full[a] = 1;
  }
  const auto slices = slices_of(u, g.belief);
  for (int a = 0; a < g.k; ++a) {
    if (is_full[a]) {
      continue;
    }
    std::vector<ProcessId> xs;
    for (int pos : sample_subset(rng, static_cast<int>(g.slice), static_cast<int>(g.alpha))) {
      xs.push_back(slices[a][pos]);
    }
    out.partial.emplace(a, std::move(xs));
  }
  return out;
}

FailproneDescriptor sample_failprone(const Universe& u, const GridParams& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_failprone(u, g, rng);
}

std::vector<std::int64_t> value_counts(const Universe& u, int attribute, const ProcessSet& s) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(u.k(attribute)), 0);
  s.for_each([&](ProcessId p) { ++out[u.coord(p, attribute)]; });
  return out;
}

bool in_closure(const Universe& u, const GridParams& g, const ProcessSet& s) {
  const auto counts = value_counts(u, g.belief, s);
  const auto heavy = std::count_if(counts.begin(), counts.end(), [&](std::int64_t c) { return c > g.alpha; });
  return heavy <= g.f;
}

std::optional<FailproneDescriptor> covering_failprone(const Universe& u, const GridParams& g, const ProcessSet& s) {
  const auto counts = value_counts(u, g.belief, s);
  std::vector<int> order(static_cast<std::size_t>(g.k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return counts[a] > counts[b]; });
  FailproneDescriptor out;
  out.belief = g.belief;
  out.full.assign(order.begin(), order.begin() + g.f);
  std::sort(out.full.begin(), out.full.end());
  for (auto it = order.begin() + g.f; it != order.end(); ++it) {
    if (counts[*it] > g.alpha) {
      return std::nullopt;
    }
  }
  const auto slices = slices_of(u, g.belief);
  for (int a = 0; a < g.k; ++a) {
    if (std::binary_search(out.full.begin(), out.full.end(), a)) {
      continue;
    }
    std::vector<ProcessId> xs;
    for (ProcessId p : slices[a]) {
      if (s.contains(p)) {
        xs.push_back(p);
      }
    }
    for (ProcessId p : slices[a]) {
      if (static_cast<std::int64_t>(xs.size()) >= g.alpha) {
        break;
      }
      if (!s.contains(p)) {
        xs.push_back(p);
      }
    }
    std::sort(xs.begin(), xs.end());
    out.partial.emplace(a, std::move(xs));
  }
  return out;
}

bool is_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj, const ProcessSet& s) {
  return in_closure(u, gi, s) && in_closure(u, gj, s);
}

namespace {

// Incremental admission test for F_i* n F_j*.
class JointCounter {
 public:
  JointCounter(const Universe& u, const GridParams& gi, const GridParams& gj)
      : u_(u), gi_(gi), gj_(gj), rows_(static_cast<std::size_t>(gi.k), 0), cols_(static_cast<std::size_t>(gj.k), 0) {}

  bool try_add(ProcessSet& s, ProcessId p) {
    if (s.contains(p)) {
      return true;
    }
    const int a = u_.coord(p, gi_.belief);
    const int b = u_.coord(p, gj_.belief);
    const bool row_turns = rows_[a] == gi_.alpha;
    const bool col_turns = cols_[b] == gj_.alpha;
    if ((row_turns && heavy_rows_ + 1 > gi_.f) || (col_turns && heavy_cols_ + 1 > gj_.f)) {
      return false;
    }
    heavy_rows_ += row_turns ? 1 : 0;
    heavy_cols_ += col_turns ? 1 : 0;
    ++rows_[a];
    ++cols_[b];
    s.insert(p);
    return true;
  }

 private:
  const Universe& u_;
  const GridParams& gi_;
  const GridParams& gj_;
  std::vector<std::int64_t> rows_;
  std::vector<std::int64_t> cols_;
  std::int64_t heavy_rows_ = 0;
  std::int64_t heavy_cols_ = 0;
};

}  // namespace

ProcessSet saturate_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj, ProcessSet s) {
  if (!is_joint_fault(u, gi, gj, s)) {
    throw std::invalid_argument("saturate_joint_fault: input is not a joint fault");
  }
  JointCounter counter(u, gi, gj);
  ProcessSet out = u.empty_set();
  s.for_each([&](ProcessId p) { counter.try_add(out, p); });
  for (ProcessId p = 0; p < u.n(); ++p) {
    counter.try_add(out, p);
  }
  return out;
}

namespace {

void explicit_maximal(const Universe& u, const GridParams& gi, const GridParams& gj,
                      const std::function<bool(const ProcessSet&)>& visit) {
  std::vector<ProcessSet> fi;
  std::vector<ProcessSet> fj;
  FailproneDescriptor d;
  for (FailproneEnumerator e(u, gi); e.next(d);) {
    fi.push_back(materialize(u, gi, d));
  }
  for (FailproneEnumerator e(u, gj); e.next(d);) {
    fj.push_back(materialize(u, gj, d));
  }
  std::set<ProcessSet> uniq;
  for (const auto& a : fi) {
    for (const auto& b : fj) {
      uniq.insert(a & b);
    }
  }
  std::vector<ProcessSet> all(uniq.begin(), uniq.end());
  std::stable_sort(all.begin(), all.end(), [](const ProcessSet& a, const ProcessSet& b) { return a.size() > b.size(); });
  std::vector<ProcessSet> kept;
  for (const auto& s : all) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ProcessSet& t) { return s.is_subset_of(t); });
    if (!dominated) {
      kept.push_back(s);
    }
  }
  std::sort(kept.begin(), kept.end());
  for (const auto& s : kept) {
    if (!visit(s)) {
      return;
    }
  }
}

void structured_maximal(const Universe& u, const GridParams& gi, const GridParams& gj,
                        const std::function<bool(const ProcessSet&)>& visit) {
  const auto cells = u.cells(gi.belief, gj.belief);
  const int ki = static_cast<int>(gi.k);
  const int kj = static_cast<int>(gj.k);
  for_each_combination(ki, static_cast<int>(gi.f), [&](const std::vector<int>& rows) {
    return for_each_combination(kj, static_cast<int>(gj.f), [&](const std::vector<int>& cols) {
      std::vector<char> in_s(static_cast<std::size_t>(ki), 0);
      std::vector<char> in_t(static_cast<std::size_t>(kj), 0);
      for (int a : rows) in_s[a] = 1;
      for (int b : cols) in_t[b] = 1;
      JointCounter counter(u, gi, gj);
      ProcessSet s = u.empty_set();
      auto add_cell = [&](int a, int b) {
        for (ProcessId p : cells[static_cast<std::size_t>(a * kj + b)]) counter.try_add(s, p);
      };
      for (int a : rows) {
        for (int b : cols) add_cell(a, b);
      }
      // partial failures of one belief spent on the other belief's full values
      for (int a = 0; a < ki; ++a) {
        if (!in_s[a]) {
          for (int b : cols) add_cell(a, b);
        }
      }
      for (int b = 0; b < kj; ++b) {
        if (!in_t[b]) {
          for (int a : rows) add_cell(a, b);
        }
      }
      for (ProcessId p = 0; p < u.n(); ++p) {
        counter.try_add(s, p);
      }
      return visit(s);
    });
  });
}

}  // namespace

void for_each_maximal_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj,
                                  const std::function<bool(const ProcessSet&)>& visit, JointFaultMode mode,
                                  const BigInt& budget) {
  if (gi.belief == gj.belief) {
    throw std::invalid_argument("maximal joint faults need two distinct beliefs");
  }
  if (mode == JointFaultMode::Auto) {
    mode = failprone_count(gi) * failprone_count(gj) <= budget ? JointFaultMode::Explicit : JointFaultMode::Structured;
  }
  if (mode == JointFaultMode::Explicit) {
    explicit_maximal(u, gi, gj, visit);
  } else {
    structured_maximal(u, gi, gj, visit);
  }
}

std::vector<ProcessSet> maximal_joint_faults(const Universe& u, const GridParams& gi, const GridParams& gj,
                                             JointFaultMode mode, const BigInt& budget) {
  std::vector<ProcessSet> out;
  for_each_maximal_joint_fault(
      u, gi, gj,
      [&](const ProcessSet& s) {
        out.push_back(s);
        return true;
      },
      mode, budget);
  return out;
}

}  // namespace gq
