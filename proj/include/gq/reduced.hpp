#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gq/failprone.hpp"
#include "gq/rational.hpp"
#include "gq/universe.hpp"

namespace gq {

/// Two beliefs collapsed to (A_i, A_j) cells of m interchangeable processes each.
/// F_i takes values 0..f_i-1 of A_i as full rows and F_j takes values 0..f_j-1 of A_j
/// as full columns; the remaining p_i x p_j cells form the region where partial
/// failures and the joint fault compete.
struct ReducedGrid {
  int row_belief = 0;
  int col_belief = 1;
  std::int64_t m = 0;
  int rows = 0;  // p_i
  int cols = 0;  // p_j
  std::int64_t row_f = 0;
  std::int64_t col_f = 0;
  std::int64_t row_alpha = 0;
  std::int64_t col_alpha = 0;
  std::int64_t n = 0;

  std::int64_t region() const { return m * rows * cols; }
  std::int64_t outside() const { return n - region(); }
  /// Partial failures a row can usefully place inside the region.
  std::int64_t row_tokens() const { return std::min(row_alpha, m * cols); }
  std::int64_t col_tokens() const { return std::min(col_alpha, m * rows); }
  /// Rows that must end up with at most alpha uncovered processes for a violation.
  int light_rows() const { return static_cast<int>(std::max<std::int64_t>(0, rows - row_f)); }
  int light_cols() const { return static_cast<int>(std::max<std::int64_t>(0, cols - col_f)); }
  std::int64_t row_need() const { return m * cols - row_alpha; }
  std::int64_t col_need() const { return m * rows - col_alpha; }

  ReducedGrid transposed() const;
};

ReducedGrid reduce(const GridParams& gi, const GridParams& gj);

/// Row-major rows x cols matrix of per-cell process counts.
struct CellMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> v;

  CellMatrix() = default;
  CellMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

  std::int64_t& at(int a, int b) { return v[static_cast<std::size_t>(a) * cols + b]; }
  std::int64_t at(int a, int b) const { return v[static_cast<std::size_t>(a) * cols + b]; }
  std::int64_t row_sum(int a) const;
  std::int64_t col_sum(int b) const;
  CellMatrix transposed() const;
  friend bool operator==(const CellMatrix&, const CellMatrix&) = default;
};

/// x: partial failures of F_i per region cell, y: of F_j. Both may exceed m jointly.
struct RegionConfig {
  CellMatrix x;
  CellMatrix y;
};

/// Uncovered processes per region cell: m - min(m, x + y).
CellMatrix remaining(const ReducedGrid& g, const RegionConfig& c);

/// |F_i u F_j| for the configuration.
std::int64_t pair_union(const ReducedGrid& g, const RegionConfig& c);

/// Largest |J n R| over joint faults J whose heavy rows/columns are the given region indices.
std::int64_t joint_fill(const ReducedGrid& g, const CellMatrix& r, const std::vector<int>& heavy_rows,
                        const std::vector<int>& heavy_cols, CellMatrix* take = nullptr);

/// All length-len vectors with entries in [0, cap] summing to total, lexicographic.
std::vector<std::vector<std::int64_t>> compositions(int len, std::int64_t total, std::int64_t cap);
BigInt composition_count(int len, std::int64_t total, std::int64_t cap);

/// Multisets of size g drawn from c kinds.
BigInt multiset_count(const BigInt& c, int g);

/// For fixed column tokens y, finds row tokens x making the first light_rows() rows and
/// first light_cols() columns light, by a flow with lower bounds.
bool decide_rows(const ReducedGrid& g, const CellMatrix& y, CellMatrix* x = nullptr);

/// Configurations enumerated when columns are canonicalised and rows are decided by flow.
BigInt decision_configurations(const ReducedGrid& g);

/// Searches for (F_i, F_j) leaving a joint fault uncovered; returns the configuration if one exists.
/// Throws BudgetExceeded when both orientations exceed the budget.
struct DecisionResult {
  std::optional<RegionConfig> violation;
  BigInt configurations;
};
DecisionResult decide_violation(const ReducedGrid& g, const BigInt& budget, int threads = 1);

/// Exact max |F_i u F_j u F_ij| by pair enumeration; nullopt when over budget.
struct MaxUnion {
  std::int64_t value = 0;
  RegionConfig config;
  CellMatrix joint;
  std::vector<int> heavy_rows;
  std::vector<int> heavy_cols;
  BigInt configurations;
};
std::optional<MaxUnion> exact_max_union(const ReducedGrid& g, const BigInt& budget);

/// Pair configurations enumerated by exact_max_union.
BigInt max_union_configurations(const ReducedGrid& g);

/// Explicit sets realising a region configuration in the universe.
struct Realisation {
  FailproneDescriptor fi;
  FailproneDescriptor fj;
  ProcessSet joint;  // joint fault drawn from the uncovered region (may be empty)
};
Realisation realise(const Universe& u, const GridParams& gi, const GridParams& gj, const ReducedGrid& g,
                    const RegionConfig& c, const CellMatrix* joint = nullptr);

}  // namespace gq
