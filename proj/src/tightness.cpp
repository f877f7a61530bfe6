#include "gq/tightness.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gq/parallel.hpp"
#include "gq/reduced.hpp"

namespace gq {

FullFailureCounterexample full_failure_counterexample(const Universe& u, int i) {
  const GridParams base = grid_params(u.schema(), i);
  FullFailureCounterexample out;
  out.params = grid_params(u.schema(), i, {.alpha = std::nullopt, .f = base.f + 1});
  const int fbar = static_cast<int>(out.params.f);
  const int k = static_cast<int>(out.params.k);
  // cyclic blocks of f+1 values; three of them reach k because 3(f+1) >= k
  for (int s = 0; s < 3; ++s) {
    std::vector<int> full;
    for (int t = 0; t < fbar; ++t) full.push_back((s * fbar + t) % k);
    out.fulls.push_back(std::move(full));
  }
  const auto slices = u.cells(i, i);
  for (const auto& full : out.fulls) {
    FailproneDescriptor d;
    d.belief = i;
    d.full = full;
    std::sort(d.full.begin(), d.full.end());
    for (int a = 0; a < k; ++a) {
      if (std::binary_search(d.full.begin(), d.full.end(), a)) continue;
      const auto& sl = slices[static_cast<std::size_t>(a) * k + a];
      d.partial.emplace(a, std::vector<ProcessId>(sl.begin(), sl.begin() + out.params.alpha));
    }
    out.witness.failprone.push_back(std::move(d));
  }
  recheck_q3_witness(u, out.params, out.witness);
  return out;
}

std::int64_t alpha_cap(std::span<const int> cardinalities, int i) {
  const GridParams gi = grid_params(cardinalities, i);
  std::int64_t cap = gi.slice + 1;
  for (int j = 0; j < static_cast<int>(cardinalities.size()); ++j) {
    if (j == i) continue;
    const GridParams gj = grid_params(cardinalities, j);
    cap = std::min(cap, gi.slice - gj.f * cell_size(gi, gj));
  }
  return cap;
}

std::optional<RegionConfig> sampled_violation(const ReducedGrid& g, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::int64_t tokens = g.col_tokens();
  RegionConfig cfg{CellMatrix(g.rows, g.cols), CellMatrix(g.rows, g.cols)};
  auto try_y = [&](const CellMatrix& y) {
    cfg.y = y;
    return decide_rows(g, y, &cfg.x);
  };
  if (g.rows == 0 || g.cols == 0) {
    if (try_y(CellMatrix(g.rows, g.cols))) return cfg;
    return std::nullopt;
  }
  const int light = g.light_rows();
  // Structured seeds: column tokens dealt round-robin over the rows that must become
  // light (then the rest), continuing where the previous column stopped.
  for (int scope = std::max(light, 1); scope <= g.rows; ++scope) {
    CellMatrix y(g.rows, g.cols);
    std::int64_t cursor = 0;
    for (int b = 0; b < g.cols; ++b) {
      std::int64_t left = tokens;
      for (int guard = 0; left > 0 && guard < 2 * g.rows; ++guard) {
        const int a = static_cast<int>(cursor % scope);
        ++cursor;
        if (y.at(a, b) < g.m) {
          ++y.at(a, b);
          --left;
        }
      }
      for (int a = 0; left > 0 && a < g.rows; ++a) {
        const std::int64_t put = std::min(left, g.m - y.at(a, b));
        y.at(a, b) += put;
        left -= put;
      }
    }
    if (try_y(y)) return cfg;
  }
  std::vector<int> order(static_cast<std::size_t>(g.rows));
  for (int s = 0; s < samples; ++s) {
    CellMatrix y(g.rows, g.cols);
    for (int b = 0; b < g.cols; ++b) {
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t t = order.size(); t > 1; --t) std::swap(order[t - 1], order[uniform_below(rng, t)]);
      std::int64_t left = tokens;
      for (std::size_t t = 0; left > 0; ++t) {
        const int a = order[t % order.size()];
        if (y.at(a, b) < g.m) {
          ++y.at(a, b);
          --left;
        }
      }
    }
    if (try_y(y)) return cfg;
  }
  return std::nullopt;
}

namespace {

GridParams candidate_params(const AttributeSchema& s, int j, int i, std::int64_t alpha, const AlphaSearchOptions& opt) {
  const GridParams base = grid_params(s, j);
  if (j == i) return grid_params(s, j, {.alpha = alpha, .f = std::nullopt});
  if (!opt.joint) return base;
  const std::int64_t lift = alpha - grid_params(s, i).default_alpha;
  return grid_params(s, j, {.alpha = std::min(base.slice, base.default_alpha + lift), .f = std::nullopt});
}

}  // namespace

bool alpha_feasible(const Universe& u, int i, std::int64_t alpha, const AlphaSearchOptions& opt) {
  const auto& s = u.schema();
  const GridParams gi = candidate_params(s, i, i, alpha, opt);
  CheckOptions co{.budget = opt.budget, .threads = 1, .compute_slack = false};
  if (!check_q3_exhaustive(u, gi, co).holds) return false;
  for (int j = 0; j < u.d(); ++j) {
    if (j == i) continue;
    const GridParams gj = candidate_params(s, j, i, alpha, opt);
    if (opt.joint && !check_q3_exhaustive(u, gj, co).holds) return false;
    if (opt.mode == SearchMode::Exhaustive) {
      if (!check_b3_exhaustive(u, gi, gj, co).holds) return false;
    } else {
      const ReducedGrid g = reduce(gi, gj);
      if (auto cfg = sampled_violation(g, opt.decision_samples, opt.adversarial.seed)) {
        const Realisation r = realise(u, gi, gj, g, *cfg);
        Witness w;
        w.failprone = {r.fi, r.fj};
        w.joint_fault = saturate_joint_fault(u, gi, gj, r.joint);
        recheck_b3_witness(u, gi, gj, w);
        return false;
      }
      if (adversarial_max_union(u, gi, gj, opt.adversarial).cardinality >= u.n()) return false;
    }
  }
  return true;
}

AlphaSearchResult max_alpha(const AttributeSchema& schema, int i, const AlphaSearchOptions& opt) {
  schema.require_analyzable();
  if (opt.mode == SearchMode::Exhaustive && schema.d() != 2) {
    throw std::invalid_argument("exhaustive alpha search is defined for two attributes");
  }
  const Universe u(schema);
  const auto ks = schema.cardinalities();
  const GridParams g = grid_params(schema, i);
  AlphaSearchResult r;
  r.k = ks;
  r.belief = i;
  if (schema.d() == 2) r.partner = 1 - i;
  r.mode = opt.mode;
  r.default_alpha = g.default_alpha;
  r.cap = std::min(alpha_cap(std::span<const int>(ks), i), g.slice + 1);
  // feasibility is monotone in alpha: failprone sets and closures only grow
  std::int64_t lo = g.default_alpha;
  std::int64_t hi = r.cap - 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    ++r.candidates_checked;
    if (alpha_feasible(u, i, mid, opt)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  r.max_alpha = lo;
  const GridParams best = grid_params(schema, i, {.alpha = r.max_alpha, .f = std::nullopt});
  r.increase_percent = Rational(100 * (best.failprone_size() - g.failprone_size())) / g.failprone_size();
  return r;
}

std::vector<AlphaSearchResult> alpha_tightness_sweep(int k1_lo, int k1_hi, int k2_lo, int k2_hi,
                                                     const AlphaSearchOptions& opt, int threads) {
  std::vector<std::pair<int, int>> cells;
  for (int k1 = k1_lo; k1 <= k1_hi; ++k1) {
    for (int k2 = k2_lo; k2 <= k2_hi; ++k2) cells.emplace_back(k1, k2);
  }
  std::vector<AlphaSearchResult> out(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t t) {
    out[t] = max_alpha(AttributeSchema::uniform({cells[t].first, cells[t].second}), 0, opt);
  });
  return out;
}

void write_alpha_csv(std::ostream& os, const std::vector<AlphaSearchResult>& rows) {
  os << "k1,k2,default_alpha,max_alpha,method,increase_percent\n";
  for (const auto& r : rows) {
    os << r.k.at(0) << ',' << r.k.at(1) << ',' << r.default_alpha << ',' << r.max_alpha << ','
       << (r.mode == SearchMode::Exhaustive ? "EXHAUSTIVE" : "ADVERSARIAL") << ',' << std::fixed
       << std::setprecision(6) << to_double(r.increase_percent) << '\n';
  }
}

}  // namespace gq
