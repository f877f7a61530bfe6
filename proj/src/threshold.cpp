#include "gq/threshold.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "gq/failprone.hpp"
#include "gq/parallel.hpp"

namespace gq {

std::int64_t threshold_card(std::int64_t n) {
  if (n < 4) {
    throw std::invalid_argument("threshold comparison needs n >= 4");
  }
  return ceil_div(n, 3) - 1;
}

ScanRecord usefulness(std::span<const int> cardinalities, int belief) {
  for (int k : cardinalities) {
    if (k < 4) {
      grid_params(std::vector<int>{k}, 0);  // throws UnsupportedCardinality
    }
  }
  const GridParams g = grid_params(cardinalities, belief);
  ScanRecord r;
  r.k.assign(cardinalities.begin(), cardinalities.end());
  r.belief = belief;
  r.grid_card = g.failprone_size();
  r.threshold_card = threshold_card(g.n);
  r.ratio = ratio(r.grid_card, r.threshold_card);
  r.useful = r.grid_card > r.threshold_card;
  return r;
}

ScanRecord usefulness(const AttributeSchema& schema, int belief) {
  const auto ks = schema.cardinalities();
  return usefulness(std::span<const int>(ks), belief);
}

void attach_optimized_alpha(ScanRecord& r, std::int64_t alpha) {
  const GridParams g = grid_params(std::span<const int>(r.k), r.belief, {.alpha = alpha, .f = std::nullopt});
  r.optimized_alpha = alpha;
  r.useful_with_optimized_alpha = g.failprone_size() > r.threshold_card;
}

std::vector<ScanRecord> sweep_equal(int d_lo, int d_hi, int k_lo, int k_hi, int threads) {
  std::vector<std::vector<int>> configs;
  for (int d = d_lo; d <= d_hi; ++d) {
    for (int k = k_lo; k <= k_hi; ++k) configs.emplace_back(static_cast<std::size_t>(d), k);
  }
  std::vector<ScanRecord> out(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t t) { out[t] = usefulness(std::span<const int>(configs[t]), 0); });
  return out;
}

std::vector<ScanRecord> sweep_2d(int k1_lo, int k1_hi, int k2_lo, int k2_hi, int threads) {
  std::vector<std::vector<int>> configs;
  for (int k1 = k1_lo; k1 <= k1_hi; ++k1) {
    for (int k2 = k2_lo; k2 <= k2_hi; ++k2) configs.push_back({k1, k2});
  }
  std::vector<ScanRecord> out(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t t) { out[t] = usefulness(std::span<const int>(configs[t]), 0); });
  return out;
}

namespace {

std::string fixed6(const Rational& q) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << to_double(q);
  return os.str();
}

}  // namespace

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  int width = 0;
  for (const auto& r : records) width = std::max(width, r.d());
  os << "d";
  for (int j = 1; j <= width; ++j) os << ",k" << j;
  os << ",belief,grid_card,threshold_card,ratio,useful,optimized_alpha,useful_opt\n";
  for (const auto& r : records) {
    os << r.d();
    for (int j = 0; j < width; ++j) {
      os << ',';
      if (j < r.d()) os << r.k[j];
    }
    os << ',' << r.belief << ',' << r.grid_card << ',' << r.threshold_card << ',' << fixed6(r.ratio) << ','
       << (r.useful ? "true" : "false") << ',';
    if (r.optimized_alpha) os << *r.optimized_alpha;
    os << ',';
    if (r.useful_with_optimized_alpha) os << (*r.useful_with_optimized_alpha ? "true" : "false");
    os << '\n';
  }
}

std::size_t InequalityReport::violations() const {
  std::size_t c = 0;
  for (const auto& x : checks) c += x.holds ? 0 : 1;
  return c;
}

std::size_t InequalityReport::mismatches() const {
  std::size_t c = 0;
  for (const auto& x : checks) c += x.matches_grid_card ? 0 : 1;
  return c;
}

namespace {

Rational q(const BigInt& v) { return Rational(v); }

BigInt power(std::int64_t base, int e) {
  BigInt out = 1;
  for (int t = 0; t < e; ++t) out *= base;
  return out;
}

// The common left-hand side: ceil(k/3 - 1) * n/k + floor(2k/3 + 1) * ceil(n/(6k) - 1).
Rational equal_lhs(std::int64_t k, const BigInt& slice) {
  const Rational kq(k);
  return q(ceil_of(kq / 3 - 1)) * q(slice) + q(floor_of(2 * kq / 3 + 1)) * q(ceil_of(q(slice) / 6 - 1));
}

void record(InequalityReport& rep, std::string name, std::vector<int> ks, Rational lhs) {
  InequalityCheck c;
  c.family = std::move(name);
  BigInt n = 1;
  for (int k : ks) n *= k;
  c.rhs = static_cast<std::int64_t>(ceil_of(q(n) / 3 - 1));
  c.holds = lhs > c.rhs;
  const GridParams g = grid_params(std::span<const int>(ks), 0);
  c.matches_grid_card = lhs == Rational(g.failprone_size());
  c.k = std::move(ks);
  c.lhs = std::move(lhs);
  rep.checks.push_back(std::move(c));
}

std::vector<std::vector<int>> mixed_domain(int k1, const InequalityRanges& r) {
  std::vector<std::vector<int>> out;
  for (int k2 = 4; k2 <= r.k_max && out.size() < r.mixed_samples; ++k2) {
    for (int k3 = 4; k3 <= r.k_max && out.size() < r.mixed_samples; ++k3) out.push_back({k1, k2, k3});
  }
  if (r.d_max >= 4) {
    const int hi = std::min(12, r.k_max);
    for (int k2 = 4; k2 <= hi && out.size() < r.mixed_samples; ++k2) {
      for (int k3 = 4; k3 <= hi && out.size() < r.mixed_samples; ++k3) {
        for (int k4 = 4; k4 <= hi && out.size() < r.mixed_samples; ++k4) out.push_back({k1, k2, k3, k4});
      }
    }
  }
  return out;
}

}  // namespace

InequalityReport verify_usefulness_inequalities(const InequalityRanges& r) {
  InequalityReport rep;
  for (int k = 15; k <= r.k_max; ++k) {
    record(rep, "two_dim_k_ge_15", {k, k}, equal_lhs(k, k));
  }
  for (int d = 3; d <= r.d_max; ++d) {
    record(rep, "d_dim_k_4", std::vector<int>(static_cast<std::size_t>(d), 4), equal_lhs(4, power(4, d - 1)));
  }
  for (int k : {7, 8, 9}) {
    for (int d = 3; d <= r.d_max; ++d) {
      record(rep, "d_dim_k_789", std::vector<int>(static_cast<std::size_t>(d), k), equal_lhs(k, power(k, d - 1)));
    }
  }
  for (int k = 10; k <= r.k_max; ++k) {
    for (int d = 3; d <= r.d_max; ++d) {
      record(rep, "d_dim_k_ge_10", std::vector<int>(static_cast<std::size_t>(d), k), equal_lhs(k, power(k, d - 1)));
    }
  }
  for (int k2 = 13; k2 <= r.k_max; ++k2) {
    const Rational kq(k2);
    record(rep, "two_dim_k1_4_k2_ge_13", {4, k2}, kq + 3 * q(ceil_of(kq / 6 - 1)));
  }
  for (int k2 = 7; k2 <= r.k_max; ++k2) {
    const Rational kq(k2);
    record(rep, "two_dim_k1_7_k2_ge_7", {7, k2}, 2 * kq + 5 * q(ceil_of(kq / 6 - 1)));
  }
  struct Mixed {
    int k1;
    const char* name;
    std::int64_t full_num;
    std::int64_t full_den;
    std::int64_t parts;
    std::int64_t alpha_den;
  };
  for (const Mixed& m : {Mixed{4, "d_dim_k1_4", 1, 4, 3, 24}, Mixed{7, "d_dim_k1_7", 2, 7, 5, 42},
                         Mixed{8, "d_dim_k1_8", 2, 8, 6, 48}}) {
    for (auto ks : mixed_domain(m.k1, r)) {
      BigInt n = 1;
      for (int k : ks) n *= k;
      const Rational lhs = q(n) * m.full_num / m.full_den + m.parts * q(ceil_of(q(n) / m.alpha_den - 1));
      record(rep, m.name, std::move(ks), lhs);
    }
  }
  return rep;
}

void write_inequality_csv(std::ostream& os, const InequalityReport& report) {
  os << "family,k,lhs,rhs,holds,matches_grid_card\n";
  for (const auto& c : report.checks) {
    os << c.family << ',';
    for (std::size_t j = 0; j < c.k.size(); ++j) os << (j ? "x" : "") << c.k[j];
    os << ',' << to_string(c.lhs) << ',' << c.rhs << ',' << (c.holds ? "true" : "false") << ','
       << (c.matches_grid_card ? "true" : "false") << '\n';
  }
}

}  // namespace gq
