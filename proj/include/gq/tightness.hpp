#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gq/failprone.hpp"
#include "gq/rational.hpp"
#include "gq/reduced.hpp"
#include "gq/resilience.hpp"
#include "gq/universe.hpp"

namespace gq {

/// Three full-value choices with one more full value than allowed, covering every value.
struct FullFailureCounterexample {
  GridParams params;                    // f forced to f + 1
  std::vector<std::vector<int>> fulls;  // three choices, each of size f + 1
  Witness witness;                      // three failprone sets covering P
};

FullFailureCounterexample full_failure_counterexample(const Universe& u, int i);

enum class SearchMode { Exhaustive, Adversarial };

struct AlphaSearchOptions {
  SearchMode mode = SearchMode::Exhaustive;
  BigInt budget = 10'000'000;
  AdversarialOptions adversarial{.restarts = 16, .iterations = 300, .seed = 0};
  int decision_samples = 200;  // random column configurations tried per adversarial candidate
  bool joint = false;          // experimental: raise every belief's alpha by the same amount
};

struct AlphaSearchResult {
  std::vector<int> k;
  int belief = 0;
  std::optional<int> partner;  // the other belief for d = 2; empty means all pairs
  std::int64_t default_alpha = 0;
  std::int64_t max_alpha = 0;  // EXHAUSTIVE: largest feasible; ADVERSARIAL: largest with no violation found
  std::int64_t cap = 0;        // exclusive search bound
  SearchMode mode = SearchMode::Exhaustive;
  Rational increase_percent;
  int candidates_checked = 0;
};

/// Feasibility of belief i with the given alpha: Q3 for i and B3 against every other belief.
/// EXHAUSTIVE is ground truth; ADVERSARIAL only reports whether a violation was found.
bool alpha_feasible(const Universe& u, int i, std::int64_t alpha, const AlphaSearchOptions& opt);

/// Exclusive upper bound for the search: n/k_i - f_j n/(k_i k_j), minimised over j.
std::int64_t alpha_cap(std::span<const int> cardinalities, int i);

AlphaSearchResult max_alpha(const AttributeSchema& schema, int i, const AlphaSearchOptions& opt = {});

std::vector<AlphaSearchResult> alpha_tightness_sweep(int k1_lo, int k1_hi, int k2_lo, int k2_hi,
                                                     const AlphaSearchOptions& opt = {}, int threads = 1);

/// CSV `k1,k2,default_alpha,max_alpha,method,increase_percent`.
void write_alpha_csv(std::ostream& os, const std::vector<AlphaSearchResult>& rows);

/// Structured and random column configurations, rows decided by flow; a B3 violation if found.
std::optional<RegionConfig> sampled_violation(const ReducedGrid& g, int samples, std::uint64_t seed);

}  // namespace gq
