#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gq/rational.hpp"
#include "gq/universe.hpp"

namespace gq {

/// One configuration of a usefulness sweep.
struct ScanRecord {
  std::vector<int> k;
  int belief = 0;
  std::int64_t grid_card = 0;
  std::int64_t threshold_card = 0;
  Rational ratio;
  bool useful = false;
  std::optional<std::int64_t> optimized_alpha;
  std::optional<bool> useful_with_optimized_alpha;

  int d() const { return static_cast<int>(k.size()); }
};

/// ceil(n/3) - 1, the largest fault set of the n > 3f threshold system.
std::int64_t threshold_card(std::int64_t n);

ScanRecord usefulness(std::span<const int> cardinalities, int belief);
ScanRecord usefulness(const AttributeSchema& schema, int belief);

/// Records with an optimized alpha filled in (grid cardinality recomputed with it).
void attach_optimized_alpha(ScanRecord& r, std::int64_t alpha);

/// Equal cardinalities: one record per (d, k), belief 0.
std::vector<ScanRecord> sweep_equal(int d_lo, int d_hi, int k_lo, int k_hi, int threads = 1);

/// Two attributes, belief 0, k1 outer.
std::vector<ScanRecord> sweep_2d(int k1_lo, int k1_hi, int k2_lo, int k2_hi, int threads = 1);

/// CSV `d,k1..kD,belief,grid_card,threshold_card,ratio,useful,optimized_alpha,useful_opt`;
/// the k columns are padded to the widest record.
void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records);

struct InequalityCheck {
  std::string family;
  std::vector<int> k;
  Rational lhs;
  std::int64_t rhs = 0;
  bool holds = false;
  bool matches_grid_card = false;  // lhs equals the failprone cardinality for belief 0
};

struct InequalityRanges {
  int k_max = 64;
  int d_max = 8;
  std::size_t mixed_samples = 10'000;  // per unequal-cardinality family
};

struct InequalityReport {
  std::vector<InequalityCheck> checks;
  std::size_t violations() const;
  std::size_t mismatches() const;
};

/// Evaluates the closed-form usefulness inequalities over their domains.
InequalityReport verify_usefulness_inequalities(const InequalityRanges& ranges = {});

void write_inequality_csv(std::ostream& os, const InequalityReport& report);

}  // namespace gq
