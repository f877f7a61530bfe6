#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gq/rational.hpp"
#include "gq/universe.hpp"

namespace gq {

/// Helper variables of the grid failprone system of one belief attribute.
struct GridParams {
  int belief = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t slice = 0;  // n / k
  std::int64_t f = 0;
  std::int64_t p = 0;
  std::int64_t alpha = 0;
  std::int64_t default_f = 0;
  std::int64_t default_alpha = 0;
  // k/3 - f and n/(6k) - alpha for the f and alpha in use; both lie in (0,1] for defaults.
  Rational epsilon;
  Rational delta;

  bool overridden() const { return f != default_f || alpha != default_alpha; }
  /// |F| = (n/k) f + p alpha.
  std::int64_t failprone_size() const { return slice * f + p * alpha; }
};

struct ParamOverrides {
  std::optional<std::int64_t> alpha;  // must not be below the default
  std::optional<std::int64_t> f;      // mutation hook; breaks the construction on purpose
};

GridParams grid_params(std::span<const int> cardinalities, int i, const ParamOverrides& ov = {});
GridParams grid_params(const AttributeSchema& schema, int i, const ParamOverrides& ov = {});

/// C(k, f) * C(n/k, alpha)^p.
BigInt failprone_count(const GridParams& g);

/// n / (k_i k_j), processes per (A_i, A_j) cell.
std::int64_t cell_size(const GridParams& gi, const GridParams& gj);

/// |full(F_i) u full(F_j)| by inclusion-exclusion.
std::int64_t full_union_cardinality(const GridParams& gi, const GridParams& gj);

/// m f_i f_j + p_i alpha_i + p_j alpha_j, the largest possible |F_i n F_j|.
std::int64_t intersection_bound(const GridParams& gi, const GridParams& gj);

/// Symbolic grid failprone set: full values plus alpha processes in each other value.
struct FailproneDescriptor {
  int belief = 0;
  std::vector<int> full;                             // sorted
  std::map<int, std::vector<ProcessId>> partial;     // value -> sorted ids

  friend bool operator==(const FailproneDescriptor&, const FailproneDescriptor&) = default;
};

/// Throws InvalidDescriptor if sizes, ranges or disjointness are violated.
void validate(const Universe& u, const GridParams& g, const FailproneDescriptor& desc);

ProcessSet materialize(const Universe& u, const GridParams& g, const FailproneDescriptor& desc);

/// P \ F.
ProcessSet canonical_quorum(const Universe& u, const GridParams& g, const FailproneDescriptor& desc);

/// Lexicographic stream over every maximal failprone set of one belief.
class FailproneEnumerator {
 public:
  FailproneEnumerator(const Universe& u, GridParams g);

  BigInt count() const { return failprone_count(g_); }
  bool next(FailproneDescriptor& out);

 private:
  void reset_partials();
  void fill(FailproneDescriptor& out) const;

  GridParams g_;
  std::vector<std::vector<ProcessId>> slices_;
  std::vector<int> full_;
  std::vector<int> rest_;
  std::vector<std::vector<int>> picks_;  // per rest value, positions within its slice
  bool started_ = false;
  bool done_ = false;
};

/// P \ F for every F of the enumerator, in the same order.
class CanonicalQuorumEnumerator {
 public:
  CanonicalQuorumEnumerator(const Universe& u, GridParams g) : u_(&u), g_(g), inner_(u, g) {}
  bool next(ProcessSet& out);

 private:
  const Universe* u_;
  GridParams g_;
  FailproneEnumerator inner_;
  FailproneDescriptor cur_;
};

/// Uniform integer in [0, bound) with rejection, identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform draw from the enumeration space.
FailproneDescriptor sample_failprone(const Universe& u, const GridParams& g, std::mt19937_64& rng);
FailproneDescriptor sample_failprone(const Universe& u, const GridParams& g, std::uint64_t seed);

/// counts[a] = |S n (A_attribute = a)|.
std::vector<std::int64_t> value_counts(const Universe& u, int attribute, const ProcessSet& s);

/// S is a subset of some failprone set: at most f values carry more than alpha members of S.
bool in_closure(const Universe& u, const GridParams& g, const ProcessSet& s);

/// A failprone set containing S, if one exists.
std::optional<FailproneDescriptor> covering_failprone(const Universe& u, const GridParams& g, const ProcessSet& s);

bool is_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj, const ProcessSet& s);

/// Extends S (a joint fault) greedily by ascending id to an inclusion-maximal joint fault.
ProcessSet saturate_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj, ProcessSet s);

enum class JointFaultMode { Auto, Explicit, Structured };

/// Streams maximal elements of F_i* n F_j*; the visitor returns false to stop.
/// Explicit: all pairwise intersections filtered to maximal ones (exactly the maximal family).
/// Structured: one saturated extremal set per choice of full values on both sides.
/// Auto picks Explicit when the pair count fits the budget.
void for_each_maximal_joint_fault(const Universe& u, const GridParams& gi, const GridParams& gj,
                                  const std::function<bool(const ProcessSet&)>& visit,
                                  JointFaultMode mode = JointFaultMode::Auto, const BigInt& budget = 1'000'000);

std::vector<ProcessSet> maximal_joint_faults(const Universe& u, const GridParams& gi, const GridParams& gj,
                                             JointFaultMode mode = JointFaultMode::Auto,
                                             const BigInt& budget = 1'000'000);

/// Visits every k-subset of {0..n-1} in lexicographic order; the visitor returns false to stop.
bool for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace gq
