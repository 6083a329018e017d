#pragma once

#include <vector>

#include "egorov/integer_map.hpp"
#include "egorov/numbers.hpp"

namespace egorov {

// k -> unit * p^{exp(k)}, with unit normalized to a p-adic unit
// (valuation 0) so the term's valuation at index k is exactly exp(k).
struct RatMonomial {
  Rational unit;
  IntegerMap exp;

  bool operator==(const RatMonomial&) const = default;
};

// Finite sum of monomials in one prime: k -> sum_i unit_i * p^{exp_i(k)}.
// Values are exact at every index; the eventual behavior (valuation or
// vanishing) is decided by affine analysis of the exponent tails, since
// terms with distinct slopes cannot cancel for large k.
class PowSum {
 public:
  static PowSum zero(const Prime& p) { return PowSum(p, {}); }
  static PowSum constant(const Prime& p, const Rational& q);
  static PowSum monomial(const Prime& p, const Rational& unit, IntegerMap exp);

  const Prime& prime() const { return p_; }
  const std::vector<RatMonomial>& terms() const { return terms_; }
  bool no_terms() const { return terms_.empty(); }

  bool operator==(const PowSum&) const = default;

 private:
  PowSum(Prime p, std::vector<RatMonomial> terms)
      : p_(p), terms_(std::move(terms)) {}

  friend PowSum ps_add(const PowSum&, const PowSum&);
  friend PowSum ps_neg(const PowSum&);
  friend PowSum ps_mul(const PowSum&, const PowSum&);

  Prime p_;
  std::vector<RatMonomial> terms_;
};

Rational ps_eval(const PowSum& s, std::int64_t k);
PowSum ps_add(const PowSum& a, const PowSum& b);
PowSum ps_neg(const PowSum& a);
PowSum ps_sub(const PowSum& a, const PowSum& b);
PowSum ps_mul(const PowSum& a, const PowSum& b);

// Eventual shape of k -> v_p(s(k)): either s(k) = 0 for every k >= from, or
// s(k) != 0 with v_p(s(k)) = val(k) for every k >= from.  `from` is a valid
// stabilization index, not necessarily the least one.
struct EventualVal {
  bool zero;
  IntegerMap val;
  std::int64_t from;
};

EventualVal ps_eventual_valuation(const PowSum& s);

// A predicate on indices that holds (or fails) for every k >= from.
struct EventualBool {
  bool value;
  std::int64_t from;
};

// Does v_p(s(k)) >= bound(k) hold eventually?  (Zero counts as >= anything.)
EventualBool ps_valuation_ge(const PowSum& s, const IntegerMap& bound);
EventualBool ps_eventually_zero(const PowSum& s);

// Pointwise minimum of coordinate valuations (infinite entries dropped;
// all-infinite gives zero=true).
EventualVal ev_min(const std::vector<EventualVal>& parts);

EventualBool eb_and(const EventualBool& a, const EventualBool& b);

}  // namespace egorov
