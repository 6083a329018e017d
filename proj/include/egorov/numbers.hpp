#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>

#include "egorov/errors.hpp"

namespace egorov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A verified prime; the base of all valuation arithmetic.  Construction
// runs a deterministic Miller-Rabin check, valid for the supported range
// p < 2^31, and rejects anything else with Errc::non_prime.
class Prime {
 public:
  explicit Prime(std::int64_t p);
  std::int64_t value() const noexcept { return p_; }
  BigInt big() const { return BigInt(p_); }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::int64_t p_;
};

// Exponent of a p-adic norm (|q|_p = p^(-v)).  Infinity is the valuation of
// zero and compares greater than every finite exponent.
class ValuationExp {
 public:
  static ValuationExp infinity() { return ValuationExp(true, 0); }
  static ValuationExp finite(std::int64_t v) { return ValuationExp(false, v); }

  bool is_finite() const noexcept { return !inf_; }
  bool is_infinite() const noexcept { return inf_; }
  std::int64_t value() const {
    if (inf_) fail(Errc::not_supported, "valuation exponent is infinite");
    return v_;
  }

  friend bool operator==(const ValuationExp&, const ValuationExp&) = default;
  friend std::strong_ordering operator<=>(const ValuationExp& a,
                                          const ValuationExp& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    return a.v_ <=> b.v_;
  }

 private:
  ValuationExp(bool inf, std::int64_t v) : inf_(inf), v_(v) {}
  bool inf_;
  std::int64_t v_;
};

// v_p(q) = v_p(numerator) - v_p(denominator); Infinity iff q = 0.
ValuationExp valuation(const Prime& p, const Rational& q);

// Exponent of p in a nonzero integer.
std::int64_t int_valuation(const Prime& p, const BigInt& n);

// base^e for e >= 0.
BigInt pow_int(const BigInt& base, std::uint64_t e);

// p^e as an exact rational (negative exponents allowed).
Rational pow_p(const Prime& p, std::int64_t e);

// The digits of q's p-adic expansion below exponent `gamma`, i.e. the unique
// r = sum_{j in [v, gamma)} d_j p^j with valuation(q - r) >= gamma.
// Returns 0 when q = 0 or valuation(q) >= gamma.  Idempotent.
Rational digit_truncate(const Prime& p, const Rational& q, std::int64_t gamma);

// Base-p digits of a canonical truncation (nonnegative, denominator a power
// of p).  Returned little-endian starting at exponent `start`.
struct DigitExpansion {
  std::int64_t start = 0;
  std::vector<int> digits;  // values in [0, p)
};
DigitExpansion digit_expansion(const Prime& p, const Rational& q);

// Text format "a/b" or "a"; optional leading minus on the numerator only.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

// Accepts the plain format plus the power shorthand "p^e" / "-p^e".
Rational parse_rational_shorthand(const Prime& p, const std::string& s);

}  // namespace egorov
