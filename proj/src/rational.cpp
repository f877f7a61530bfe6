#include "gq/rational.hpp"

#include <limits>
#include <stdexcept>

namespace gq {

BigInt floor_of(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;
  if (num % den != 0 && num < 0) {
    quot -= 1;
  }
  return quot;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  if (b <= 0) {
    throw std::invalid_argument("ceil_div: non-positive divisor");
  }
  std::int64_t q = a / b;
  if (a % b != 0 && a > 0) {
    ++q;
  }
  return q;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in cardinality arithmetic");
  }
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::int64_t t = 1; t <= k; ++t) {
    out = out * (n - k + t) / t;
  }
  return out;
}

}  // namespace gq
