#include "gq/resilience.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "gq/errors.hpp"

namespace gq {

std::string to_string(Property p) {
  switch (p) {
    case Property::Q3Resilience:
      return "Q3_RESILIENCE";
    case Property::B3Resilience:
      return "B3_RESILIENCE";
    case Property::B3Consistency:
      return "B3_CONSISTENCY";
    case Property::B3Availability:
      return "B3_AVAILABILITY";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Exhaustive:
      return "EXHAUSTIVE";
    case Method::Bound:
      return "BOUND";
    case Method::Adversarial:
      return "ADVERSARIAL";
    case Method::Sampled:
      return "SAMPLED";
  }
  return "?";
}

namespace {

std::vector<std::vector<ProcessId>> slices(const Universe& u, int attribute) {
  std::vector<std::vector<ProcessId>> out(static_cast<std::size_t>(u.k(attribute)));
  for (ProcessId p = 0; p < u.n(); ++p) out[u.coord(p, attribute)].push_back(p);
  return out;
}

// Failprone sets for three full-value choices; partial picks rotate through each
// uncovered slice so that the three sets overlap as little as possible.
std::vector<FailproneDescriptor> q3_triple(const Universe& u, const GridParams& g,
                                           const std::vector<std::vector<int>>& fulls) {
  const auto sl = slices(u, g.belief);
  std::vector<FailproneDescriptor> out;
  for (std::size_t s = 0; s < fulls.size(); ++s) {
    FailproneDescriptor d;
    d.belief = g.belief;
    d.full = fulls[s];
    std::sort(d.full.begin(), d.full.end());
    for (int a = 0; a < g.k; ++a) {
      if (std::binary_search(d.full.begin(), d.full.end(), a)) continue;
      std::vector<ProcessId> xs;
      for (std::int64_t t = 0; t < g.alpha; ++t) {
        xs.push_back(sl[a][static_cast<std::size_t>((static_cast<std::int64_t>(s) * g.alpha + t) % g.slice)]);
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      // wrap-around can repeat a process only when alpha exceeds the slice
      d.partial.emplace(a, std::move(xs));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

ResilienceVerdict check_q3_exhaustive(const Universe& u, const GridParams& g, const CheckOptions& opt) {
  ResilienceVerdict v;
  v.property = Property::Q3Resilience;
  v.method = Method::Exhaustive;
  const std::int64_t f = g.f;
  const std::int64_t k = g.k;
  const std::int64_t partial_cover = std::min(g.slice, 3 * g.alpha);
  std::int64_t best = -1;
  std::optional<std::array<std::int64_t, 7>> best_class;
  // Venn regions: only-1, only-2, only-3, 12, 13, 23, 123.
  for (std::int64_t r123 = 0; r123 <= f; ++r123) {
    for (std::int64_t r12 = 0; r12 + r123 <= f; ++r12) {
      for (std::int64_t r13 = 0; r13 + r12 + r123 <= f; ++r13) {
        for (std::int64_t r23 = 0; r23 + r123 <= f && r23 + r13 + r123 <= f; ++r23) {
          const std::int64_t r1 = f - r12 - r13 - r123;
          const std::int64_t r2 = f - r12 - r23 - r123;
          const std::int64_t r3 = f - r13 - r23 - r123;
          if (r2 < 0 || r3 < 0) continue;
          const std::int64_t used = r1 + r2 + r3 + r12 + r13 + r23 + r123;
          if (used > k) continue;
          ++v.configurations;
          if (v.configurations > opt.budget) throw BudgetExceeded(v.configurations, opt.budget);
          const std::int64_t uni = used * g.slice + (k - used) * partial_cover;
          if (uni > best) {
            best = uni;
            best_class = std::array<std::int64_t, 7>{r1, r2, r3, r12, r13, r23, r123};
          }
        }
      }
    }
  }
  v.slack = u.n() - best;
  v.holds = best < u.n();
  if (!v.holds) {
    const auto& c = *best_class;
    std::vector<std::vector<int>> fulls(3);
    int next = 0;
    const std::vector<std::vector<int>> members = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    for (std::size_t r = 0; r < 7; ++r) {
      for (std::int64_t t = 0; t < c[r]; ++t) {
        for (int s : members[r]) fulls[s].push_back(next);
        ++next;
      }
    }
    Witness w;
    w.failprone = q3_triple(u, g, fulls);
    recheck_q3_witness(u, g, w);
    v.witness = std::move(w);
  }
  return v;
}

ResilienceVerdict check_b3_exhaustive(const Universe& u, const GridParams& gi, const GridParams& gj,
                                      const CheckOptions& opt) {
  ResilienceVerdict v;
  v.property = Property::B3Resilience;
  v.method = Method::Exhaustive;
  const ReducedGrid g = reduce(gi, gj);
  DecisionResult dr = decide_violation(g, opt.budget, opt.threads);
  v.configurations = dr.configurations;
  if (dr.violation) {
    Realisation r = realise(u, gi, gj, g, *dr.violation);
    if (!is_joint_fault(u, gi, gj, r.joint)) {
      throw std::logic_error("decided violation does not leave a joint fault uncovered");
    }
    Witness w;
    w.failprone = {r.fi, r.fj};
    w.joint_fault = saturate_joint_fault(u, gi, gj, r.joint);
    recheck_b3_witness(u, gi, gj, w);
    v.holds = false;
    v.slack = 0;
    v.witness = std::move(w);
    return v;
  }
  v.holds = true;
  if (!opt.compute_slack) return v;
  if (auto mu = exact_max_union(g, opt.budget)) {
    v.slack = u.n() - mu->value;
    v.configurations += mu->configurations;
  }
  return v;
}

namespace {

std::optional<Witness> explicit_consistency(const Universe& u, const GridParams& gi, const GridParams& gj,
                                            BigInt& configurations) {
  std::vector<std::pair<FailproneDescriptor, ProcessSet>> qi;
  std::vector<std::pair<FailproneDescriptor, ProcessSet>> qj;
  FailproneDescriptor d;
  for (FailproneEnumerator e(u, gi); e.next(d);) qi.emplace_back(d, canonical_quorum(u, gi, d));
  for (FailproneEnumerator e(u, gj); e.next(d);) qj.emplace_back(d, canonical_quorum(u, gj, d));
  const auto joints = maximal_joint_faults(u, gi, gj, JointFaultMode::Explicit, BigInt(qi.size()) * qj.size());
  for (const auto& [di, a] : qi) {
    for (const auto& [dj, b] : qj) {
      ++configurations;
      const ProcessSet meet = a & b;
      for (const auto& jf : joints) {
        if (meet.is_subset_of(jf)) {
          Witness w;
          w.failprone = {di, dj};
          w.quorums = {a, b};
          w.joint_fault = jf;
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

// Does R fit inside some joint fault? Heavy rows/columns of the joint fault must include
// every row/column where R exceeds the partial budget; the rest is a covering flow.
bool contained_in_joint(const ReducedGrid& g, const CellMatrix& r, CellMatrix* take) {
  const int hr = static_cast<int>(std::min<std::int64_t>(g.row_f, g.rows));
  const int hc = static_cast<int>(std::min<std::int64_t>(g.col_f, g.cols));
  std::int64_t total = 0;
  std::vector<int> must_rows;
  std::vector<int> must_cols;
  std::vector<int> free_rows;
  std::vector<int> free_cols;
  for (int a = 0; a < g.rows; ++a) {
    (r.row_sum(a) > g.row_alpha ? must_rows : free_rows).push_back(a);
    total += r.row_sum(a);
  }
  for (int b = 0; b < g.cols; ++b) (r.col_sum(b) > g.col_alpha ? must_cols : free_cols).push_back(b);
  if (static_cast<int>(must_rows.size()) > hr || static_cast<int>(must_cols.size()) > hc) return false;
  bool found = false;
  for_each_combination(static_cast<int>(free_rows.size()), hr - static_cast<int>(must_rows.size()),
                       [&](const std::vector<int>& rs) {
                         std::vector<int> rows = must_rows;
                         for (int t : rs) rows.push_back(free_rows[t]);
                         return for_each_combination(
                             static_cast<int>(free_cols.size()), hc - static_cast<int>(must_cols.size()),
                             [&](const std::vector<int>& cs) {
                               std::vector<int> cols = must_cols;
                               for (int t : cs) cols.push_back(free_cols[t]);
                               if (joint_fill(g, r, rows, cols, take) == total) {
                                 found = true;
                                 return false;
                               }
                               return true;
                             });
                       });
  return found;
}

}  // namespace

ResilienceVerdict check_b3_consistency_direct(const Universe& u, const GridParams& gi, const GridParams& gj,
                                              const CheckOptions& opt) {
  ResilienceVerdict v;
  v.property = Property::B3Consistency;
  v.method = Method::Exhaustive;
  const BigInt explicit_pairs = failprone_count(gi) * failprone_count(gj);
  constexpr std::int64_t kExplicitLimit = 20'000;
  if (explicit_pairs <= kExplicitLimit && explicit_pairs <= opt.budget) {
    auto w = explicit_consistency(u, gi, gj, v.configurations);
    v.holds = !w;
    if (w) {
      recheck_consistency_witness(u, gi, gj, *w);
      v.witness = std::move(w);
    }
    return v;
  }
  const ReducedGrid g = reduce(gi, gj);
  const BigInt cr = composition_count(g.cols, g.row_tokens(), g.m);
  const BigInt cc = composition_count(g.rows, g.col_tokens(), g.m);
  BigInt need = multiset_count(cr, g.rows);
  for (int b = 0; b < g.cols; ++b) need *= cc;
  if (need > opt.budget) throw BudgetExceeded(need, opt.budget);
  const auto rcomps = compositions(g.cols, g.row_tokens(), g.m);
  const auto ccomps = compositions(g.rows, g.col_tokens(), g.m);
  // all region rows are interchangeable, so x is enumerated as a sorted multiset of rows
  std::vector<int> xi(static_cast<std::size_t>(g.rows), 0);
  RegionConfig cfg{CellMatrix(g.rows, g.cols), CellMatrix(g.rows, g.cols)};
  bool x_done = rcomps.empty() && g.rows > 0;
  while (!x_done) {
    for (int a = 0; a < g.rows; ++a) {
      for (int b = 0; b < g.cols; ++b) cfg.x.at(a, b) = rcomps[xi[a]][b];
    }
    std::vector<int> yi(static_cast<std::size_t>(g.cols), 0);
    bool y_done = ccomps.empty() && g.cols > 0;
    while (!y_done) {
      for (int b = 0; b < g.cols; ++b) {
        for (int a = 0; a < g.rows; ++a) cfg.y.at(a, b) = ccomps[yi[b]][a];
      }
      ++v.configurations;
      CellMatrix take;
      const CellMatrix r = remaining(g, cfg);
      if (contained_in_joint(g, r, &take)) {
        Realisation re = realise(u, gi, gj, g, cfg, &take);
        Witness w;
        w.failprone = {re.fi, re.fj};
        w.quorums = {canonical_quorum(u, gi, re.fi), canonical_quorum(u, gj, re.fj)};
        w.joint_fault = saturate_joint_fault(u, gi, gj, re.joint);
        recheck_consistency_witness(u, gi, gj, w);
        v.holds = false;
        v.witness = std::move(w);
        return v;
      }
      int b = g.cols - 1;
      while (b >= 0 && yi[b] + 1 == static_cast<int>(ccomps.size())) yi[b--] = 0;
      if (b < 0) y_done = true;
      else ++yi[b];
    }
    int a = g.rows - 1;
    while (a >= 0 && xi[a] + 1 == static_cast<int>(rcomps.size())) --a;
    if (a < 0) {
      x_done = true;
    } else {
      ++xi[a];
      for (int s = a + 1; s < g.rows; ++s) xi[s] = xi[a];
    }
  }
  v.holds = true;
  return v;
}

namespace {

std::optional<Witness> availability_of(const Universe& u, const GridParams& g, const FailproneDescriptor& d) {
  const ProcessSet f = materialize(u, g, d);
  const ProcessSet q = canonical_quorum(u, g, d);
  if (q.intersects(f) || (q.empty() && !f.empty())) {
    Witness w;
    w.failprone = {d};
    return w;
  }
  return std::nullopt;
}

}  // namespace

ResilienceVerdict check_b3_availability(const Universe& u, const GridParams& g, const CheckOptions& opt) {
  ResilienceVerdict v;
  v.property = Property::B3Availability;
  v.method = Method::Exhaustive;
  const BigInt count = failprone_count(g);
  if (count > opt.budget) throw BudgetExceeded(count, opt.budget);
  FailproneDescriptor d;
  for (FailproneEnumerator e(u, g); e.next(d);) {
    ++v.configurations;
    if (auto w = availability_of(u, g, d)) {
      v.holds = false;
      v.witness = std::move(w);
      return v;
    }
  }
  return v;
}

ResilienceVerdict check_b3_availability_sampled(const Universe& u, const GridParams& g, std::size_t samples,
                                                std::uint64_t seed) {
  ResilienceVerdict v;
  v.property = Property::B3Availability;
  v.method = Method::Sampled;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ++v.configurations;
    if (auto w = availability_of(u, g, sample_failprone(u, g, rng))) {
      v.holds = false;
      v.witness = std::move(w);
      return v;
    }
  }
  return v;
}

ResilienceVerdict check_availability(const std::vector<ProcessSet>& failprone, const std::vector<ProcessSet>& quorums) {
  ResilienceVerdict v;
  v.property = Property::B3Availability;
  v.method = Method::Exhaustive;
  for (const auto& f : failprone) {
    ++v.configurations;
    const bool ok = std::any_of(quorums.begin(), quorums.end(), [&](const ProcessSet& q) { return !q.intersects(f); });
    if (!ok) {
      Witness w;
      w.faults = {f};
      v.holds = false;
      v.witness = std::move(w);
      return v;
    }
  }
  return v;
}

Rational BoundBreakdown::slack_sum() const {
  Rational s = 0;
  for (const auto& t : slack_terms) s += t;
  return s;
}

BoundBreakdown check_b3_bound(const GridParams& gi, const GridParams& gj) {
  BoundBreakdown b;
  b.n = gi.n;
  const std::int64_t m = cell_size(gi, gj);
  b.full_union = full_union_cardinality(gi, gj);
  b.partial_union = gi.p * gi.alpha + gj.p * gj.alpha;
  b.residual = m * gi.f * gj.f + (gj.p - gj.f) * gj.alpha + (gi.p - gi.f) * gi.alpha;
  b.total = b.full_union + b.partial_union + b.residual;
  const Rational n(b.n);
  b.slack_terms = {
      Rational(gi.k) * gi.delta,
      Rational(gj.k) * gj.delta,
      n * gi.epsilon / (2 * gi.k),
      n * gj.epsilon / (2 * gj.k),
      3 * (gi.epsilon * gi.delta + gj.epsilon * gj.delta),
  };
  if (Rational(b.total) != n - b.slack_sum()) {
    throw std::logic_error("bound breakdown does not match its slack decomposition");
  }
  return b;
}

namespace {

class AdversarialSearch {
 public:
  AdversarialSearch(const ReducedGrid& g, std::uint64_t seed) : g_(g), rng_(seed) {}

  std::int64_t value(const RegionConfig& c, CellMatrix* take = nullptr, std::vector<int>* hr = nullptr,
                     std::vector<int>* hc = nullptr) const {
    const CellMatrix r = remaining(g_, c);
    auto rows = top(g_.rows, static_cast<int>(std::min<std::int64_t>(g_.row_f, g_.rows)),
                    [&](int a) { return r.row_sum(a); });
    auto cols = top(g_.cols, static_cast<int>(std::min<std::int64_t>(g_.col_f, g_.cols)),
                    [&](int b) { return r.col_sum(b); });
    const std::int64_t v = pair_union(g_, c) + joint_fill(g_, r, rows, cols, take);
    if (hr != nullptr) *hr = rows;
    if (hc != nullptr) *hc = cols;
    return v;
  }

  // Row tokens spread round-robin; column tokens then go to the least covered cells.
  RegionConfig greedy() const {
    RegionConfig c{CellMatrix(g_.rows, g_.cols), CellMatrix(g_.rows, g_.cols)};
    for (int a = 0; a < g_.rows; ++a) {
      std::int64_t left = g_.row_tokens();
      for (int step = 0; left > 0; ++step) {
        const int b = (a + step) % g_.cols;
        if (c.x.at(a, b) < g_.m) {
          ++c.x.at(a, b);
          --left;
        }
      }
    }
    for (int b = 0; b < g_.cols; ++b) {
      for (std::int64_t left = g_.col_tokens(); left > 0; --left) {
        int best = -1;
        for (int a = 0; a < g_.rows; ++a) {
          if (c.y.at(a, b) >= g_.m) continue;
          if (best < 0 || c.x.at(a, b) + c.y.at(a, b) < c.x.at(best, b) + c.y.at(best, b)) best = a;
        }
        ++c.y.at(best, b);
      }
    }
    return c;
  }

  RegionConfig random() {
    RegionConfig c{CellMatrix(g_.rows, g_.cols), CellMatrix(g_.rows, g_.cols)};
    for (int a = 0; a < g_.rows; ++a) {
      for (std::int64_t left = g_.row_tokens(); left > 0;) {
        const int b = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.cols)));
        if (c.x.at(a, b) < g_.m) {
          ++c.x.at(a, b);
          --left;
        }
      }
    }
    for (int b = 0; b < g_.cols; ++b) {
      for (std::int64_t left = g_.col_tokens(); left > 0;) {
        const int a = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.rows)));
        if (c.y.at(a, b) < g_.m) {
          ++c.y.at(a, b);
          --left;
        }
      }
    }
    return c;
  }

  // Moves one token within its row (x) or column (y); false if nothing movable.
  bool perturb(RegionConfig& c) {
    const bool use_x = g_.row_tokens() > 0 && (g_.col_tokens() == 0 || uniform_below(rng_, 2) == 0);
    if (use_x) {
      if (g_.cols < 2) return false;
      const int a = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.rows)));
      const int from = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.cols)));
      const int to = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.cols)));
      if (from == to || c.x.at(a, from) == 0 || c.x.at(a, to) >= g_.m) return false;
      --c.x.at(a, from);
      ++c.x.at(a, to);
      return true;
    }
    if (g_.col_tokens() == 0 || g_.rows < 2) return false;
    const int b = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.cols)));
    const int from = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.rows)));
    const int to = static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(g_.rows)));
    if (from == to || c.y.at(from, b) == 0 || c.y.at(to, b) >= g_.m) return false;
    --c.y.at(from, b);
    ++c.y.at(to, b);
    return true;
  }

 private:
  template <class Key>
  static std::vector<int> top(int count, int take, Key key) {
    std::vector<int> idx(static_cast<std::size_t>(count));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int p, int q) { return key(p) > key(q); });
    idx.resize(static_cast<std::size_t>(take));
    return idx;
  }

  const ReducedGrid& g_;
  std::mt19937_64 rng_;
};

}  // namespace

AdversarialResult adversarial_max_union(const Universe& u, const GridParams& gi, const GridParams& gj,
                                        const AdversarialOptions& opt) {
  const ReducedGrid g = reduce(gi, gj);
  AdversarialSearch search(g, opt.seed);
  RegionConfig best = search.greedy();
  std::int64_t best_value = search.value(best);
  for (int restart = 0; restart < std::max(1, opt.restarts) && best_value < g.n; ++restart) {
    RegionConfig cur = restart == 0 ? best : search.random();
    std::int64_t cur_value = restart == 0 ? best_value : search.value(cur);
    for (int it = 0; it < opt.iterations && best_value < g.n; ++it) {
      RegionConfig cand = cur;
      if (!search.perturb(cand)) continue;
      const std::int64_t cv = search.value(cand);
      if (cv >= cur_value) {
        cur = std::move(cand);
        cur_value = cv;
      }
      if (cur_value > best_value) {
        best = cur;
        best_value = cur_value;
      }
    }
    if (cur_value > best_value) {
      best = cur;
      best_value = cur_value;
    }
  }
  CellMatrix take;
  search.value(best, &take);
  Realisation r = realise(u, gi, gj, g, best, &take);
  if (!is_joint_fault(u, gi, gj, r.joint)) {
    throw std::logic_error("adversarial joint fault leaves the closure");
  }
  AdversarialResult out;
  out.covered = materialize(u, gi, r.fi) | materialize(u, gj, r.fj) | r.joint;
  out.cardinality = static_cast<std::int64_t>(out.covered.size());
  if (out.cardinality != best_value) {
    throw std::logic_error("adversarial recount " + std::to_string(out.cardinality) + " differs from search value " +
                           std::to_string(best_value));
  }
  out.sets.failprone = {r.fi, r.fj};
  out.sets.joint_fault = r.joint;
  return out;
}

std::optional<std::int64_t> exact_max_union_cardinality(const GridParams& gi, const GridParams& gj,
                                                        const BigInt& budget) {
  auto mu = exact_max_union(reduce(gi, gj), budget);
  if (!mu) return std::nullopt;
  return mu->value;
}

void recheck_q3_witness(const Universe& u, const GridParams& g, const Witness& w) {
  if (w.failprone.size() != 3) throw std::logic_error("Q3 witness needs three failprone sets");
  ProcessSet all = u.empty_set();
  for (const auto& d : w.failprone) all |= materialize(u, g, d);
  if (all.size() != static_cast<std::size_t>(u.n())) {
    throw std::logic_error("Q3 witness covers only " + std::to_string(all.size()) + " processes");
  }
}

void recheck_b3_witness(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w) {
  if (w.failprone.size() != 2 || !w.joint_fault) throw std::logic_error("B3 witness is incomplete");
  if (!is_joint_fault(u, gi, gj, *w.joint_fault)) throw std::logic_error("B3 witness joint fault is not joint");
  const ProcessSet all = materialize(u, gi, w.failprone[0]) | materialize(u, gj, w.failprone[1]) | *w.joint_fault;
  if (all.size() != static_cast<std::size_t>(u.n())) {
    throw std::logic_error("B3 witness covers only " + std::to_string(all.size()) + " processes");
  }
}

void recheck_consistency_witness(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w) {
  if (w.quorums.size() != 2 || !w.joint_fault) throw std::logic_error("consistency witness is incomplete");
  if (w.failprone.size() == 2) {
    if (!(w.quorums[0] == canonical_quorum(u, gi, w.failprone[0])) ||
        !(w.quorums[1] == canonical_quorum(u, gj, w.failprone[1]))) {
      throw std::logic_error("consistency witness quorums are not canonical");
    }
  }
  if (!is_joint_fault(u, gi, gj, *w.joint_fault)) throw std::logic_error("consistency witness fault is not joint");
  if (!(w.quorums[0] & w.quorums[1]).is_subset_of(*w.joint_fault)) {
    throw std::logic_error("quorum intersection escapes the joint fault");
  }
}

Witness resilience_to_consistency(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w) {
  Witness out = w;
  out.quorums = {canonical_quorum(u, gi, w.failprone.at(0)), canonical_quorum(u, gj, w.failprone.at(1))};
  return out;
}

Witness consistency_to_resilience(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w) {
  Witness out;
  auto di = covering_failprone(u, gi, w.quorums.at(0).complement());
  auto dj = covering_failprone(u, gj, w.quorums.at(1).complement());
  if (!di || !dj) throw std::logic_error("quorum complement is not a failprone set");
  out.failprone = {*di, *dj};
  out.joint_fault = w.joint_fault;
  return out;
}

}  // namespace gq
