#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gq/failprone.hpp"
#include "gq/universe.hpp"

namespace gq {

/// A concrete execution: who believes which attribute, and who actually failed.
struct Scenario {
  AttributeSchema schema;
  std::vector<int> beliefs;  // one belief attribute per process id
  std::vector<ProcessId> faults;

  /// Every process believes `belief`.
  static Scenario uniform(AttributeSchema schema, int belief, std::vector<ProcessId> faults);
  /// Throws std::invalid_argument on size or range errors.
  void validate() const;
};

enum class Status { Faulty, Wise, Naive };
std::string to_string(Status s);

struct ProcessVerdict {
  ProcessId process = 0;
  int belief = 0;
  Status status = Status::Wise;
  bool availability_ok = false;
  std::optional<FailproneDescriptor> covering;  // failprone set of the belief containing F
  std::optional<ProcessSet> quorum;             // quorum disjoint from F
};

/// FAULTY / WISE / NAIVE per process; wise means F is in the closure of the process's belief.
std::vector<ProcessVerdict> classify(const Scenario& s);

/// classify() plus, per correct process, a canonical quorum avoiding F when one exists.
std::vector<ProcessVerdict> check_availability(const Scenario& s);

struct SafetyReport {
  int i = 0;
  int j = 0;
  bool joint_fault = false;      // F in F_i* n F_j*; then no violation is possible
  bool violation_found = false;  // some canonical Q_i, Q_j have Q_i n Q_j inside F
  std::optional<FailproneDescriptor> fi;
  std::optional<FailproneDescriptor> fj;
  std::optional<ProcessSet> qi;
  std::optional<ProcessSet> qj;
  std::int64_t full_choices_examined = 0;
};

/// Searches for canonical quorums of beliefs i and j whose intersection consists of faulty
/// processes only, i.e. two failprone sets covering every correct process.
SafetyReport check_pairwise_safety(const Scenario& s, int i, int j, std::int64_t budget = 1'000'000);

}  // namespace gq
