#include "gq/reduced.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gq/errors.hpp"
#include "gq/maxflow.hpp"

namespace gq {

ReducedGrid ReducedGrid::transposed() const {
  ReducedGrid t = *this;
  std::swap(t.row_belief, t.col_belief);
  std::swap(t.rows, t.cols);
  std::swap(t.row_f, t.col_f);
  std::swap(t.row_alpha, t.col_alpha);
  return t;
}

ReducedGrid reduce(const GridParams& gi, const GridParams& gj) {
  if (gi.belief == gj.belief) {
    throw std::invalid_argument("reduced grid needs two distinct beliefs");
  }
  ReducedGrid g;
  g.row_belief = gi.belief;
  g.col_belief = gj.belief;
  g.m = cell_size(gi, gj);
  g.rows = static_cast<int>(gi.p);
  g.cols = static_cast<int>(gj.p);
  g.row_f = gi.f;
  g.col_f = gj.f;
  g.row_alpha = gi.alpha;
  g.col_alpha = gj.alpha;
  g.n = gi.n;
  return g;
}

std::int64_t CellMatrix::row_sum(int a) const {
  std::int64_t s = 0;
  for (int b = 0; b < cols; ++b) s += at(a, b);
  return s;
}

std::int64_t CellMatrix::col_sum(int b) const {
  std::int64_t s = 0;
  for (int a = 0; a < rows; ++a) s += at(a, b);
  return s;
}

CellMatrix CellMatrix::transposed() const {
  CellMatrix t(cols, rows);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) t.at(b, a) = at(a, b);
  }
  return t;
}

CellMatrix remaining(const ReducedGrid& g, const RegionConfig& c) {
  CellMatrix r(g.rows, g.cols);
  for (std::size_t t = 0; t < r.v.size(); ++t) {
    r.v[t] = g.m - std::min(g.m, c.x.v[t] + c.y.v[t]);
  }
  return r;
}

std::int64_t pair_union(const ReducedGrid& g, const RegionConfig& c) {
  std::int64_t covered = 0;
  for (std::size_t t = 0; t < c.x.v.size(); ++t) {
    covered += std::min(g.m, c.x.v[t] + c.y.v[t]);
  }
  return g.outside() + covered;
}

std::int64_t joint_fill(const ReducedGrid& g, const CellMatrix& r, const std::vector<int>& heavy_rows,
                        const std::vector<int>& heavy_cols, CellMatrix* take) {
  std::vector<char> hr(static_cast<std::size_t>(g.rows), 0);
  std::vector<char> hc(static_cast<std::size_t>(g.cols), 0);
  for (int a : heavy_rows) hr[a] = 1;
  for (int b : heavy_cols) hc[b] = 1;
  const int s = 0;
  const int t = 1;
  MaxFlow net(2 + g.rows + g.cols);
  for (int a = 0; a < g.rows; ++a) {
    net.add_edge(s, 2 + a, hr[a] ? MaxFlow::kInf : g.row_alpha);
  }
  for (int b = 0; b < g.cols; ++b) {
    net.add_edge(2 + g.rows + b, t, hc[b] ? MaxFlow::kInf : g.col_alpha);
  }
  std::vector<int> handles(r.v.size(), -1);
  for (int a = 0; a < g.rows; ++a) {
    for (int b = 0; b < g.cols; ++b) {
      if (r.at(a, b) > 0) {
        handles[static_cast<std::size_t>(a) * g.cols + b] = net.add_edge(2 + a, 2 + g.rows + b, r.at(a, b));
      }
    }
  }
  const std::int64_t total = net.run(s, t);
  if (take != nullptr) {
    *take = CellMatrix(g.rows, g.cols);
    for (std::size_t e = 0; e < handles.size(); ++e) {
      take->v[e] = handles[e] < 0 ? 0 : net.flow(handles[e]);
    }
  }
  return total;
}

namespace {

void compose(int pos, int len, std::int64_t left, std::int64_t cap, std::vector<std::int64_t>& cur,
             std::vector<std::vector<std::int64_t>>& out) {
  if (pos == len - 1) {
    if (left <= cap) {
      cur[pos] = left;
      out.push_back(cur);
    }
    return;
  }
  const std::int64_t rest_cap = cap * (len - pos - 1);
  for (std::int64_t v = std::max<std::int64_t>(0, left - rest_cap); v <= std::min(cap, left); ++v) {
    cur[pos] = v;
    compose(pos + 1, len, left - v, cap, cur, out);
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> compositions(int len, std::int64_t total, std::int64_t cap) {
  std::vector<std::vector<std::int64_t>> out;
  if (len == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::int64_t> cur(static_cast<std::size_t>(len), 0);
  compose(0, len, total, cap, cur, out);
  return out;
}

BigInt composition_count(int len, std::int64_t total, std::int64_t cap) {
  std::vector<BigInt> ways(static_cast<std::size_t>(total + 1), 0);
  ways[0] = 1;
  for (int pos = 0; pos < len; ++pos) {
    std::vector<BigInt> next(ways.size(), 0);
    for (std::int64_t s = 0; s <= total; ++s) {
      if (ways[s] == 0) continue;
      for (std::int64_t v = 0; v <= cap && s + v <= total; ++v) next[s + v] += ways[s];
    }
    ways = std::move(next);
  }
  return ways[total];
}

BigInt multiset_count(const BigInt& c, int g) {
  if (g == 0) return 1;
  if (c == 0) return 0;
  BigInt out = 1;
  for (int t = 1; t <= g; ++t) {
    out = out * (c + g - t) / t;
  }
  return out;
}

namespace {

BigInt column_side_count(const ReducedGrid& g) {
  const BigInt c = composition_count(g.rows, g.col_tokens(), g.m);
  return multiset_count(c, g.light_cols()) * multiset_count(c, g.cols - g.light_cols());
}

// Nondecreasing index sequences within fixed-size groups, odometer style.
class GroupedMultisets {
 public:
  GroupedMultisets(std::vector<int> groups, int kinds) : groups_(std::move(groups)), kinds_(kinds) {
    int total = 0;
    for (int s : groups_) total += s;
    idx_.assign(static_cast<std::size_t>(total), 0);
    done_ = kinds_ == 0 && total > 0;
  }

  const std::vector<int>& current() const { return idx_; }
  bool done() const { return done_; }

  void advance() {
    int end = static_cast<int>(idx_.size());
    for (auto gi = static_cast<int>(groups_.size()) - 1; gi >= 0; --gi) {
      const int begin = end - groups_[gi];
      for (int t = end - 1; t >= begin; --t) {
        if (idx_[t] < kinds_ - 1) {
          ++idx_[t];
          for (int s = t + 1; s < end; ++s) idx_[s] = idx_[t];
          for (int s = end; s < static_cast<int>(idx_.size()); ++s) idx_[s] = 0;
          return;
        }
      }
      end = begin;
    }
    done_ = true;
  }

 private:
  std::vector<int> groups_;
  int kinds_;
  std::vector<int> idx_;
  bool done_ = false;
};

}  // namespace

bool decide_rows(const ReducedGrid& g, const CellMatrix& y, CellMatrix* x) {
  const int s = 0;
  const int t = 1;
  BoundedFlow net(2 + g.rows + g.cols);
  const int lr = g.light_rows();
  const int lc = g.light_cols();
  for (int a = 0; a < g.rows; ++a) {
    const std::int64_t low = a < lr ? std::max<std::int64_t>(0, g.row_need() - y.row_sum(a)) : 0;
    if (low > g.row_alpha) return false;
    net.add_edge(s, 2 + a, low, g.row_alpha);
  }
  std::vector<int> handles;
  handles.reserve(static_cast<std::size_t>(g.rows) * g.cols);
  for (int a = 0; a < g.rows; ++a) {
    for (int b = 0; b < g.cols; ++b) {
      handles.push_back(net.add_edge(2 + a, 2 + g.rows + b, 0, g.m - std::min(g.m, y.at(a, b))));
    }
  }
  for (int b = 0; b < g.cols; ++b) {
    const std::int64_t low = b < lc ? std::max<std::int64_t>(0, g.col_need() - y.col_sum(b)) : 0;
    net.add_edge(2 + g.rows + b, t, low, MaxFlow::kInf);
  }
  if (!net.feasible(s, t)) return false;
  if (x != nullptr) {
    *x = CellMatrix(g.rows, g.cols);
    for (std::size_t e = 0; e < handles.size(); ++e) x->v[e] = net.flow(handles[e]);
  }
  return true;
}

namespace {

CellMatrix columns_matrix(const ReducedGrid& g, const std::vector<std::vector<std::int64_t>>& comps,
                          const std::vector<int>& idx) {
  CellMatrix y(g.rows, g.cols);
  for (int b = 0; b < g.cols; ++b) {
    const auto& col = comps[idx[b]];
    for (int a = 0; a < g.rows; ++a) y.at(a, b) = col[a];
  }
  return y;
}

DecisionResult decide_columns(const ReducedGrid& g, int threads) {
  DecisionResult res;
  const auto comps = compositions(g.rows, g.col_tokens(), g.m);
  GroupedMultisets it({g.light_cols(), g.cols - g.light_cols()}, static_cast<int>(comps.size()));
  constexpr std::size_t kChunk = 2048;
  std::vector<std::vector<int>> chunk;
  while (!it.done()) {
    chunk.clear();
    while (!it.done() && chunk.size() < kChunk) {
      chunk.push_back(it.current());
      it.advance();
    }
    res.configurations += chunk.size();
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t c = next++; c < chunk.size(); c = next++) {
        if (c > best.load()) return;
        if (decide_rows(g, columns_matrix(g, comps, chunk[c]), nullptr)) {
          std::size_t cur = best.load();
          while (c < cur && !best.compare_exchange_weak(cur, c)) {
          }
          return;
        }
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (best.load() != std::numeric_limits<std::size_t>::max()) {
      RegionConfig cfg;
      cfg.y = columns_matrix(g, comps, chunk[best.load()]);
      decide_rows(g, cfg.y, &cfg.x);
      res.violation = std::move(cfg);
      return res;
    }
  }
  return res;
}

}  // namespace

BigInt decision_configurations(const ReducedGrid& g) {
  return std::min(column_side_count(g), column_side_count(g.transposed()));
}

DecisionResult decide_violation(const ReducedGrid& g, const BigInt& budget, int threads) {
  const BigInt direct = column_side_count(g);
  const BigInt flipped = column_side_count(g.transposed());
  const bool flip = flipped < direct;
  const BigInt& need = flip ? flipped : direct;
  if (need > budget) {
    throw BudgetExceeded(need, budget);
  }
  if (!flip) {
    return decide_columns(g, threads);
  }
  DecisionResult res = decide_columns(g.transposed(), threads);
  if (res.violation) {
    RegionConfig back;
    back.x = res.violation->y.transposed();
    back.y = res.violation->x.transposed();
    res.violation = std::move(back);
  }
  return res;
}

namespace {

std::vector<int> first_n(int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) out[t] = t;
  return out;
}

}  // namespace

BigInt max_union_configurations(const ReducedGrid& g) {
  const int hr = static_cast<int>(std::min<std::int64_t>(g.row_f, g.rows));
  const BigInt cr = composition_count(g.cols, g.row_tokens(), g.m);
  const BigInt cc = composition_count(g.rows, g.col_tokens(), g.m);
  BigInt ys = 1;
  for (int b = 0; b < g.cols; ++b) ys *= cc;
  return multiset_count(cr, hr) * multiset_count(cr, g.rows - hr) * ys;
}

std::optional<MaxUnion> exact_max_union(const ReducedGrid& g, const BigInt& budget) {
  const BigInt need = max_union_configurations(g);
  if (need > budget) {
    return std::nullopt;
  }
  // Heavy rows/columns of the joint fault fixed to the first region indices; row
  // symmetry within each group is quotiented on x, y runs over everything.
  const int hr = static_cast<int>(std::min<std::int64_t>(g.row_f, g.rows));
  const int hc = static_cast<int>(std::min<std::int64_t>(g.col_f, g.cols));
  const auto heavy_rows = first_n(hr);
  const auto heavy_cols = first_n(hc);
  const auto rcomps = compositions(g.cols, g.row_tokens(), g.m);
  const auto ccomps = compositions(g.rows, g.col_tokens(), g.m);
  MaxUnion best;
  best.value = -1;
  best.heavy_rows = heavy_rows;
  best.heavy_cols = heavy_cols;
  for (GroupedMultisets xs({hr, g.rows - hr}, static_cast<int>(rcomps.size())); !xs.done(); xs.advance()) {
    RegionConfig cfg{CellMatrix(g.rows, g.cols), CellMatrix(g.rows, g.cols)};
    for (int a = 0; a < g.rows; ++a) {
      for (int b = 0; b < g.cols; ++b) cfg.x.at(a, b) = rcomps[xs.current()[a]][b];
    }
    std::vector<int> yi(static_cast<std::size_t>(g.cols), 0);
    while (true) {
      for (int b = 0; b < g.cols; ++b) {
        for (int a = 0; a < g.rows; ++a) cfg.y.at(a, b) = ccomps[yi[b]][a];
      }
      ++best.configurations;
      const CellMatrix r = remaining(g, cfg);
      const std::int64_t value = pair_union(g, cfg) + joint_fill(g, r, heavy_rows, heavy_cols, nullptr);
      if (value > best.value) {
        best.value = value;
        best.config = cfg;
        joint_fill(g, r, heavy_rows, heavy_cols, &best.joint);
        if (value == g.n) return best;
      }
      int b = g.cols - 1;
      while (b >= 0 && yi[b] + 1 == static_cast<int>(ccomps.size())) {
        yi[b] = 0;
        --b;
      }
      if (b < 0) break;
      ++yi[b];
    }
  }
  if (best.value < 0) {
    return std::nullopt;
  }
  return best;
}

Realisation realise(const Universe& u, const GridParams& gi, const GridParams& gj, const ReducedGrid& g,
                    const RegionConfig& c, const CellMatrix* joint) {
  if (g.row_belief != gi.belief || g.col_belief != gj.belief) {
    throw std::invalid_argument("reduced grid orientation does not match the beliefs");
  }
  const int i = gi.belief;
  const int j = gj.belief;
  const int ki = static_cast<int>(gi.k);
  const int kj = static_cast<int>(gj.k);
  const auto cells = u.cells(i, j);
  auto cell = [&](int a, int b) -> const std::vector<ProcessId>& {
    return cells[static_cast<std::size_t>(a) * kj + b];
  };
  Realisation out{{}, {}, u.empty_set()};
  out.fi.belief = i;
  out.fj.belief = j;
  for (int a = 0; a < gi.f; ++a) out.fi.full.push_back(a);
  for (int b = 0; b < gj.f; ++b) out.fj.full.push_back(b);
  ProcessSet in_fi = u.empty_set();
  ProcessSet in_fj = u.empty_set();
  for (int r = 0; r < g.rows; ++r) {
    const int a = static_cast<int>(gi.f) + r;
    std::vector<ProcessId> xs;
    for (int q = 0; q < g.cols; ++q) {
      const auto& cl = cell(a, static_cast<int>(gj.f) + q);
      for (std::int64_t t = 0; t < std::min<std::int64_t>(c.x.at(r, q), g.m); ++t) xs.push_back(cl[t]);
    }
    for (ProcessId p : xs) in_fi.insert(p);
    // leftover partial failures go to F_j's full columns first, where they change nothing
    for (int pass = 0; pass < 2 && static_cast<std::int64_t>(xs.size()) < gi.alpha; ++pass) {
      for (int b = 0; b < kj && static_cast<std::int64_t>(xs.size()) < gi.alpha; ++b) {
        if ((b < gj.f) != (pass == 0)) continue;
        for (ProcessId p : cell(a, b)) {
          if (static_cast<std::int64_t>(xs.size()) >= gi.alpha) break;
          if (!in_fi.contains(p)) {
            in_fi.insert(p);
            xs.push_back(p);
          }
        }
      }
    }
    std::sort(xs.begin(), xs.end());
    out.fi.partial.emplace(a, std::move(xs));
  }
  for (int q = 0; q < g.cols; ++q) {
    const int b = static_cast<int>(gj.f) + q;
    std::vector<ProcessId> ys;
    for (int r = 0; r < g.rows; ++r) {
      const auto& cl = cell(static_cast<int>(gi.f) + r, b);
      const std::int64_t take = std::min<std::int64_t>(c.y.at(r, q), g.m);
      for (std::int64_t t = 0; t < take; ++t) ys.push_back(cl[cl.size() - 1 - static_cast<std::size_t>(t)]);
    }
    for (ProcessId p : ys) in_fj.insert(p);
    for (int pass = 0; pass < 2 && static_cast<std::int64_t>(ys.size()) < gj.alpha; ++pass) {
      for (int a = 0; a < ki && static_cast<std::int64_t>(ys.size()) < gj.alpha; ++a) {
        if ((a < gi.f) != (pass == 0)) continue;
        const auto& cl = cell(a, b);
        for (auto it = cl.rbegin(); it != cl.rend() && static_cast<std::int64_t>(ys.size()) < gj.alpha; ++it) {
          if (!in_fj.contains(*it)) {
            in_fj.insert(*it);
            ys.push_back(*it);
          }
        }
      }
    }
    std::sort(ys.begin(), ys.end());
    out.fj.partial.emplace(b, std::move(ys));
  }
  const ProcessSet covered = materialize(u, gi, out.fi) | materialize(u, gj, out.fj);
  if (joint == nullptr) {
    out.joint = covered.complement();
    return out;
  }
  for (int r = 0; r < g.rows; ++r) {
    for (int q = 0; q < g.cols; ++q) {
      std::int64_t want = joint->at(r, q);
      for (ProcessId p : cell(static_cast<int>(gi.f) + r, static_cast<int>(gj.f) + q)) {
        if (want == 0) break;
        if (!covered.contains(p)) {
          out.joint.insert(p);
          --want;
        }
      }
    }
  }
  return out;
}

}  // namespace gq
