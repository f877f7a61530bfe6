#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace gq {

using ProcessId = std::int64_t;

struct Attribute {
  std::string name;
  std::vector<std::string> values;
};

/// Ordered attributes spanning the process grid.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<Attribute> attributes);

  /// Schema with generated names A1.., values v0.. for the given cardinalities.
  static AttributeSchema uniform(std::span<const int> cardinalities);
  static AttributeSchema uniform(std::initializer_list<int> cardinalities);

  int d() const noexcept { return static_cast<int>(attributes_.size()); }
  int k(int j) const { return static_cast<int>(attributes_.at(j).values.size()); }
  std::vector<int> cardinalities() const;
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }

  /// Non-fatal notes collected during construction (cardinalities below four).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Throws UnsupportedCardinality unless attribute j (or all, for j < 0) has k >= 4.
  void require_analyzable(int j = -1) const;

  int attribute_index(const std::string& name) const;
  int value_index(int j, const std::string& value) const;

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::string> warnings_;
};

/// Dense subset of [0, n).
class ProcessSet {
 public:
  ProcessSet() = default;
  explicit ProcessSet(std::size_t n) : bits_(n) {}
  ProcessSet(std::size_t n, std::span<const ProcessId> members);

  std::size_t universe_size() const noexcept { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(ProcessId p) const { return bits_.test(static_cast<std::size_t>(p)); }
  void insert(ProcessId p) { bits_.set(static_cast<std::size_t>(p)); }
  void erase(ProcessId p) { bits_.reset(static_cast<std::size_t>(p)); }

  bool is_subset_of(const ProcessSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const ProcessSet& other) const { return bits_.intersects(other.bits_); }
  ProcessSet complement() const;

  ProcessSet& operator|=(const ProcessSet& o);
  ProcessSet& operator&=(const ProcessSet& o);
  ProcessSet& operator-=(const ProcessSet& o);
  friend ProcessSet operator|(ProcessSet a, const ProcessSet& b) { return a |= b; }
  friend ProcessSet operator&(ProcessSet a, const ProcessSet& b) { return a &= b; }
  friend ProcessSet operator-(ProcessSet a, const ProcessSet& b) { return a -= b; }
  friend bool operator==(const ProcessSet& a, const ProcessSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const ProcessSet& a, const ProcessSet& b) { return a.bits_ < b.bits_; }

  std::vector<ProcessId> members() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto b = bits_.find_first(); b != boost::dynamic_bitset<>::npos; b = bits_.find_next(b)) {
      fn(static_cast<ProcessId>(b));
    }
  }

  const boost::dynamic_bitset<>& bits() const noexcept { return bits_; }

 private:
  void check_same(const ProcessSet& o) const;

  boost::dynamic_bitset<> bits_;
};

/// Conjunction of per-attribute value constraints.
class Predicate {
 public:
  struct Constraint {
    int attribute;
    std::vector<int> values;  // sorted, distinct
  };

  Predicate() = default;

  /// Throws InvalidPredicate when the attribute is already constrained.
  Predicate& where(int attribute, std::vector<int> values);
  Predicate& where(int attribute, int value) { return where(attribute, std::vector<int>{value}); }

  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

  /// Throws InvalidPredicate on out-of-range attribute or value indices.
  void validate(const AttributeSchema& schema) const;

 private:
  std::vector<Constraint> constraints_;
};

/// n * prod(|A'_j| / k_j), in exact integer arithmetic.
std::int64_t restricted_cardinality(const AttributeSchema& schema, const Predicate& pred);

/// Product of cardinalities; throws std::overflow_error.
std::int64_t universe_size(std::span<const int> cardinalities);

/// The process grid A_1 x ... x A_d with mixed-radix ids, attribute 0 most significant.
class Universe {
 public:
  /// Largest n for which dense sets are materialised.
  static constexpr std::int64_t kMaxProcesses = std::int64_t{1} << 26;

  explicit Universe(AttributeSchema schema);

  const AttributeSchema& schema() const noexcept { return schema_; }
  std::int64_t n() const noexcept { return n_; }
  int d() const noexcept { return schema_.d(); }
  int k(int j) const { return schema_.k(j); }

  int coord(ProcessId p, int j) const {
    return static_cast<int>((p / stride_[static_cast<std::size_t>(j)]) % schema_.k(j));
  }
  std::vector<int> coords(ProcessId p) const;
  ProcessId id(std::span<const int> coords) const;

  ProcessSet empty_set() const { return ProcessSet(static_cast<std::size_t>(n_)); }
  ProcessSet full_set() const { return empty_set().complement(); }

  ProcessSet restrict(const Predicate& pred) const;
  /// All processes with attribute j equal to value.
  ProcessSet slice(int j, int value) const;

  /// cells[a * k_j + b] lists the processes with coord i == a and coord j == b, ascending.
  std::vector<std::vector<ProcessId>> cells(int i, int j) const;

 private:
  AttributeSchema schema_;
  std::int64_t n_ = 0;
  std::vector<std::int64_t> stride_;
};

}  // namespace gq
