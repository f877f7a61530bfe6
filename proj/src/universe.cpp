#include "gq/universe.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gq/errors.hpp"
#include "gq/rational.hpp"

namespace gq {

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
  if (attributes_.empty()) {
    throw SchemaError("schema needs at least one attribute");
  }
  std::set<std::string> names;
  for (const auto& a : attributes_) {
    if (!names.insert(a.name).second) {
      throw SchemaError("duplicate attribute name '" + a.name + "'");
    }
    if (a.values.empty()) {
      throw SchemaError("attribute '" + a.name + "' has no values");
    }
    std::set<std::string> vals(a.values.begin(), a.values.end());
    if (vals.size() != a.values.size()) {
      throw SchemaError("attribute '" + a.name + "' has duplicate values");
    }
    if (a.values.size() < 4) {
      warnings_.push_back("attribute '" + a.name + "' has " + std::to_string(a.values.size()) +
                          " values; grid analysis needs at least 4");
    }
  }
}

AttributeSchema AttributeSchema::uniform(std::span<const int> cardinalities) {
  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < cardinalities.size(); ++j) {
    if (cardinalities[j] <= 0) {
      throw SchemaError("attribute cardinality must be positive");
    }
    Attribute a{"A" + std::to_string(j + 1), {}};
    for (int v = 0; v < cardinalities[j]; ++v) {
      a.values.push_back("v" + std::to_string(v));
    }
    attrs.push_back(std::move(a));
  }
  return AttributeSchema(std::move(attrs));
}

AttributeSchema AttributeSchema::uniform(std::initializer_list<int> cardinalities) {
  std::vector<int> ks(cardinalities);
  return uniform(std::span<const int>(ks));
}

std::vector<int> AttributeSchema::cardinalities() const {
  std::vector<int> out;
  for (int j = 0; j < d(); ++j) {
    out.push_back(k(j));
  }
  return out;
}

void AttributeSchema::require_analyzable(int j) const {
  for (int t = 0; t < d(); ++t) {
    if ((j < 0 || t == j) && k(t) < 4) {
      throw UnsupportedCardinality("attribute '" + attributes_[t].name + "' has " + std::to_string(k(t)) +
                                   " values; at least 4 are required");
    }
  }
}

int AttributeSchema::attribute_index(const std::string& name) const {
  for (int j = 0; j < d(); ++j) {
    if (attributes_[j].name == name) {
      return j;
    }
  }
  throw SchemaError("unknown attribute '" + name + "'");
}

int AttributeSchema::value_index(int j, const std::string& value) const {
  const auto& vals = attributes_.at(j).values;
  auto it = std::find(vals.begin(), vals.end(), value);
  if (it == vals.end()) {
    throw SchemaError("attribute '" + attributes_[j].name + "' has no value '" + value + "'");
  }
  return static_cast<int>(it - vals.begin());
}

ProcessSet::ProcessSet(std::size_t n, std::span<const ProcessId> members) : bits_(n) {
  for (ProcessId p : members) {
    if (p < 0 || static_cast<std::size_t>(p) >= n) {
      throw std::out_of_range("process id " + std::to_string(p) + " outside universe");
    }
    bits_.set(static_cast<std::size_t>(p));
  }
}

ProcessSet ProcessSet::complement() const {
  ProcessSet out(*this);
  out.bits_.flip();
  return out;
}

void ProcessSet::check_same(const ProcessSet& o) const {
  if (o.bits_.size() != bits_.size()) {
    throw std::invalid_argument("process sets over different universes");
  }
}

ProcessSet& ProcessSet::operator|=(const ProcessSet& o) {
  check_same(o);
  bits_ |= o.bits_;
  return *this;
}

ProcessSet& ProcessSet::operator&=(const ProcessSet& o) {
  check_same(o);
  bits_ &= o.bits_;
  return *this;
}

ProcessSet& ProcessSet::operator-=(const ProcessSet& o) {
  check_same(o);
  bits_ -= o.bits_;
  return *this;
}

std::vector<ProcessId> ProcessSet::members() const {
  std::vector<ProcessId> out;
  out.reserve(size());
  for_each([&](ProcessId p) { out.push_back(p); });
  return out;
}

Predicate& Predicate::where(int attribute, std::vector<int> values) {
  for (const auto& c : constraints_) {
    if (c.attribute == attribute) {
      throw InvalidPredicate("attribute " + std::to_string(attribute) + " constrained twice");
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  constraints_.push_back({attribute, std::move(values)});
  return *this;
}

void Predicate::validate(const AttributeSchema& schema) const {
  for (const auto& c : constraints_) {
    if (c.attribute < 0 || c.attribute >= schema.d()) {
      throw InvalidPredicate("attribute index " + std::to_string(c.attribute) + " out of range");
    }
    for (int v : c.values) {
      if (v < 0 || v >= schema.k(c.attribute)) {
        throw InvalidPredicate("value index " + std::to_string(v) + " out of range for attribute " +
                               std::to_string(c.attribute));
      }
    }
  }
}

std::int64_t universe_size(std::span<const int> cardinalities) {
  std::int64_t n = 1;
  for (int k : cardinalities) {
    n = checked_mul(n, k);
  }
  return n;
}

std::int64_t restricted_cardinality(const AttributeSchema& schema, const Predicate& pred) {
  pred.validate(schema);
  std::int64_t n = universe_size(schema.cardinalities());
  for (const auto& c : pred.constraints()) {
    const std::int64_t k = schema.k(c.attribute);
    if (n % k != 0) {
      throw std::logic_error("non-exact division in restricted cardinality");
    }
    n = checked_mul(n / k, static_cast<std::int64_t>(c.values.size()));
  }
  return n;
}

Universe::Universe(AttributeSchema schema) : schema_(std::move(schema)) {
  const auto ks = schema_.cardinalities();
  n_ = universe_size(ks);
  if (n_ > kMaxProcesses) {
    throw SchemaError("universe of " + std::to_string(n_) + " processes is too large to materialise");
  }
  stride_.assign(ks.size(), 1);
  for (int j = schema_.d() - 2; j >= 0; --j) {
    stride_[j] = stride_[j + 1] * ks[j + 1];
  }
}

std::vector<int> Universe::coords(ProcessId p) const {
  if (p < 0 || p >= n_) {
    throw std::out_of_range("process id out of range");
  }
  std::vector<int> out(static_cast<std::size_t>(d()));
  for (int j = 0; j < d(); ++j) {
    out[j] = coord(p, j);
  }
  return out;
}

ProcessId Universe::id(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != d()) {
    throw std::invalid_argument("coordinate arity mismatch");
  }
  ProcessId p = 0;
  for (int j = 0; j < d(); ++j) {
    if (coords[j] < 0 || coords[j] >= k(j)) {
      throw std::out_of_range("coordinate out of range");
    }
    p += coords[j] * stride_[j];
  }
  return p;
}

ProcessSet Universe::restrict(const Predicate& pred) const {
  pred.validate(schema_);
  std::vector<std::vector<char>> allowed;
  std::vector<int> attrs;
  for (const auto& c : pred.constraints()) {
    std::vector<char> mask(static_cast<std::size_t>(k(c.attribute)), 0);
    for (int v : c.values) {
      mask[v] = 1;
    }
    allowed.push_back(std::move(mask));
    attrs.push_back(c.attribute);
  }
  ProcessSet out = empty_set();
  for (ProcessId p = 0; p < n_; ++p) {
    bool ok = true;
    for (std::size_t t = 0; t < attrs.size() && ok; ++t) {
      ok = allowed[t][coord(p, attrs[t])] != 0;
    }
    if (ok) {
      out.insert(p);
    }
  }
  return out;
}

ProcessSet Universe::slice(int j, int value) const { return restrict(Predicate().where(j, value)); }

std::vector<std::vector<ProcessId>> Universe::cells(int i, int j) const {
  const int kj = k(j);
  std::vector<std::vector<ProcessId>> out(static_cast<std::size_t>(k(i) * kj));
  for (ProcessId p = 0; p < n_; ++p) {
    out[static_cast<std::size_t>(coord(p, i) * kj + coord(p, j))].push_back(p);
  }
  return out;
}

}  // namespace gq
