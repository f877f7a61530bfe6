#pragma once

#include <stdexcept>
#include <string>

#include "gq/rational.hpp"

namespace gq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed attribute schema (empty value list, duplicate names, ...).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An analysis requires every involved attribute to have at least four values.
class UnsupportedCardinality : public Error {
 public:
  using Error::Error;
};

class InvalidPredicate : public Error {
 public:
  using Error::Error;
};

class InvalidDescriptor : public Error {
 public:
  using Error::Error;
};

/// An exhaustive check would have to enumerate more than the caller allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(BigInt required, BigInt budget)
      : Error("enumeration budget exceeded: " + required.str() + " configurations required, budget " +
              budget.str()),
        required_(std::move(required)),
        budget_(std::move(budget)) {}

  const BigInt& required() const noexcept { return required_; }
  const BigInt& budget() const noexcept { return budget_; }

 private:
  BigInt required_;
  BigInt budget_;
};

}  // namespace gq
