#pragma once

#include <string>
#include <variant>

#include "egorov/numbers.hpp"

namespace egorov {

enum class RingKind { rational, gaussian, intmod };

// Identifies one of the three supported coefficient rings.  Two elements may
// be combined only when their rings compare equal.
struct Ring {
  RingKind kind = RingKind::rational;
  BigInt modulus = 0;  // intmod only, >= 2

  static Ring rational_ring() { return {RingKind::rational, 0}; }
  static Ring gaussian_ring() { return {RingKind::gaussian, 0}; }
  static Ring intmod_ring(BigInt m);

  friend bool operator==(const Ring&, const Ring&) = default;
};

std::string format_ring(const Ring& r);

class RingElem {
 public:
  struct Gaussian {
    Rational re, im;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
  };
  struct Mod {
    BigInt residue;  // in [0, modulus)
    BigInt modulus;  // >= 2
    friend bool operator==(const Mod&, const Mod&) = default;
  };

  static RingElem rational(Rational q) { return RingElem(std::move(q)); }
  static RingElem gaussian(Rational re, Rational im) {
    return RingElem(Gaussian{std::move(re), std::move(im)});
  }
  static RingElem intmod(BigInt residue, BigInt modulus);
  static RingElem zero(const Ring& r);
  static RingElem one(const Ring& r);

  Ring ring() const;
  bool is_zero() const;

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational_value() const { return std::get<Rational>(v_); }
  const Gaussian& gaussian_value() const { return std::get<Gaussian>(v_); }
  const Mod& intmod_value() const { return std::get<Mod>(v_); }

  friend bool operator==(const RingElem&, const RingElem&) = default;

 private:
  explicit RingElem(Rational q) : v_(std::move(q)) {}
  explicit RingElem(Gaussian g) : v_(std::move(g)) {}
  explicit RingElem(Mod m) : v_(std::move(m)) {}
  std::variant<Rational, Gaussian, Mod> v_;
};

RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);

// p^e inside the ring.  For intmod with e < 0 this requires p to be
// invertible modulo the ring modulus (Errc::not_invertible otherwise).
RingElem ring_pow_p(const Ring& r, const Prime& p, std::int64_t e);

// Text formats: "a/b" (rational), "a/b+c/di" or "a/b-c/di" (gaussian; the
// real part alone when the imaginary part vanishes), decimal residue (intmod).
std::string format_ring_elem(const RingElem& e);
RingElem parse_ring_elem(const Ring& r, const std::string& s);
// Same, additionally accepting the "p^e" shorthand for real/residue values.
RingElem parse_ring_elem_shorthand(const Ring& r, const Prime& p,
                                   const std::string& s);

}  // namespace egorov
