#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(BigInt(num), BigInt(den)); }

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

/// Ceiling of a / b for b > 0.
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

/// Overflow-checked product; throws std::overflow_error.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

double to_double(const Rational& q);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Binomial coefficient, exact.
BigInt binomial(std::int64_t n, std::int64_t k);

}  // namespace gq
