#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gq/failprone.hpp"
#include "gq/rational.hpp"
#include "gq/reduced.hpp"
#include "gq/universe.hpp"

namespace gq {

enum class Property { Q3Resilience, B3Resilience, B3Consistency, B3Availability };
enum class Method { Exhaustive, Bound, Adversarial, Sampled };

std::string to_string(Property p);
std::string to_string(Method m);

/// Sets demonstrating a violation. For resilience: failprone sets (and the joint fault)
/// whose union is P. For consistency: two quorums whose intersection lies in the joint fault.
/// For availability: the failprone set left without a disjoint quorum.
struct Witness {
  std::vector<FailproneDescriptor> failprone;
  std::vector<ProcessSet> faults;  // explicit sets for non-grid families
  std::optional<ProcessSet> joint_fault;
  std::vector<ProcessSet> quorums;
};

struct ResilienceVerdict {
  Property property = Property::B3Resilience;
  Method method = Method::Exhaustive;
  bool holds = true;
  std::optional<Witness> witness;
  std::optional<std::int64_t> slack;  // n - largest union found
  BigInt configurations = 0;
};

struct CheckOptions {
  BigInt budget = 1'000'000;
  int threads = 1;
  bool compute_slack = true;  // exact max union when the pair space fits the budget
};

/// Q3: no three failprone sets of one belief cover P. Triples are canonicalised by the
/// Venn-region sizes of their full values; partial choices only matter through the
/// values no full set touches.
ResilienceVerdict check_q3_exhaustive(const Universe& u, const GridParams& g, const CheckOptions& opt = {});

/// B3 for beliefs i != j: no F_i, F_j and joint fault F_ij cover P.
ResilienceVerdict check_b3_exhaustive(const Universe& u, const GridParams& gi, const GridParams& gj,
                                      const CheckOptions& opt = {});

/// Consistency stated on quorums: no canonical Q_i, Q_j and maximal joint fault with Q_i n Q_j inside it.
ResilienceVerdict check_b3_consistency_direct(const Universe& u, const GridParams& gi, const GridParams& gj,
                                              const CheckOptions& opt = {});

/// Every failprone set has a quorum disjoint from it (exhaustive over the enumeration).
ResilienceVerdict check_b3_availability(const Universe& u, const GridParams& g, const CheckOptions& opt = {});

/// Same, over sampled failprone sets.
ResilienceVerdict check_b3_availability_sampled(const Universe& u, const GridParams& g, std::size_t samples,
                                                std::uint64_t seed);

/// Availability for arbitrary failprone/quorum families.
ResilienceVerdict check_availability(const std::vector<ProcessSet>& failprone, const std::vector<ProcessSet>& quorums);

/// Terms of the closed-form bound on |F_i u F_j u F_ij|.
struct BoundBreakdown {
  std::int64_t n = 0;
  std::int64_t full_union = 0;
  std::int64_t partial_union = 0;
  std::int64_t residual = 0;
  std::int64_t total = 0;
  // k_i delta_i, k_j delta_j, n eps_i / (2 k_i), n eps_j / (2 k_j), 3 (eps_i delta_i + eps_j delta_j)
  std::vector<Rational> slack_terms;

  Rational slack_sum() const;
  bool below_n() const { return total < n; }
};

BoundBreakdown check_b3_bound(const GridParams& gi, const GridParams& gj);

struct AdversarialOptions {
  int restarts = 64;
  int iterations = 400;  // local moves per restart
  std::uint64_t seed = 0;
};

struct AdversarialResult {
  ProcessSet covered;
  std::int64_t cardinality = 0;
  Witness sets;  // F_i, F_j and F_ij realising the union
};

/// Proof-guided greedy placement plus seeded restarts and local token moves.
AdversarialResult adversarial_max_union(const Universe& u, const GridParams& gi, const GridParams& gj,
                                        const AdversarialOptions& opt = {});

/// Exact max |F_i u F_j u F_ij| when the pair space fits the budget.
std::optional<std::int64_t> exact_max_union_cardinality(const GridParams& gi, const GridParams& gj,
                                                        const BigInt& budget);

/// Independent recount of a witness. Throws std::logic_error with a reason on mismatch.
void recheck_q3_witness(const Universe& u, const GridParams& g, const Witness& w);
void recheck_b3_witness(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w);
void recheck_consistency_witness(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w);

/// Complements failprone sets into quorums and back; the joint fault is kept.
Witness resilience_to_consistency(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w);
Witness consistency_to_resilience(const Universe& u, const GridParams& gi, const GridParams& gj, const Witness& w);

}  // namespace gq
