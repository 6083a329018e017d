#include "egorov/ring.hpp"

#include <boost/integer/mod_inverse.hpp>

namespace egorov {

namespace {

BigInt normalize_mod(BigInt r, const BigInt& m) {
  r %= m;
  if (r < 0) r += m;
  return r;
}

void require_same_ring(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring())
    fail(Errc::mixed_rings, "operands belong to different rings");
}

}  // namespace

Ring Ring::intmod_ring(BigInt m) {
  if (m < 2) fail(Errc::not_supported, "intmod modulus must be >= 2");
  return {RingKind::intmod, std::move(m)};
}

std::string format_ring(const Ring& r) {
  switch (r.kind) {
    case RingKind::rational: return "rational";
    case RingKind::gaussian: return "gaussian";
    case RingKind::intmod: return "intmod(" + r.modulus.str() + ")";
  }
  return "?";
}

RingElem RingElem::intmod(BigInt residue, BigInt modulus) {
  if (modulus < 2) fail(Errc::not_supported, "intmod modulus must be >= 2");
  BigInt r = normalize_mod(std::move(residue), modulus);
  return RingElem(Mod{std::move(r), std::move(modulus)});
}

RingElem RingElem::zero(const Ring& r) {
  switch (r.kind) {
    case RingKind::rational: return rational(Rational(0));
    case RingKind::gaussian: return gaussian(Rational(0), Rational(0));
    case RingKind::intmod: return intmod(BigInt(0), r.modulus);
  }
  fail(Errc::not_supported, "unknown ring");
}

RingElem RingElem::one(const Ring& r) {
  switch (r.kind) {
    case RingKind::rational: return rational(Rational(1));
    case RingKind::gaussian: return gaussian(Rational(1), Rational(0));
    case RingKind::intmod: return intmod(BigInt(1), r.modulus);
  }
  fail(Errc::not_supported, "unknown ring");
}

Ring RingElem::ring() const {
  if (std::holds_alternative<Rational>(v_)) return Ring::rational_ring();
  if (std::holds_alternative<Gaussian>(v_)) return Ring::gaussian_ring();
  return Ring{RingKind::intmod, std::get<Mod>(v_).modulus};
}

bool RingElem::is_zero() const {
  if (auto* q = std::get_if<Rational>(&v_)) return *q == 0;
  if (auto* g = std::get_if<Gaussian>(&v_)) return g->re == 0 && g->im == 0;
  return std::get<Mod>(v_).residue == 0;
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  if (a.is_rational())
    return RingElem::rational(a.rational_value() + b.rational_value());
  if (a.ring().kind == RingKind::gaussian) {
    const auto& x = a.gaussian_value();
    const auto& y = b.gaussian_value();
    return RingElem::gaussian(x.re + y.re, x.im + y.im);
  }
  const auto& x = a.intmod_value();
  const auto& y = b.intmod_value();
  return RingElem::intmod(x.residue + y.residue, x.modulus);
}

RingElem ring_sub(const RingElem& a, const RingElem& b) {
  return ring_add(a, ring_neg(b));
}

RingElem ring_neg(const RingElem& a) {
  if (a.is_rational()) return RingElem::rational(-a.rational_value());
  if (a.ring().kind == RingKind::gaussian) {
    const auto& x = a.gaussian_value();
    return RingElem::gaussian(-x.re, -x.im);
  }
  const auto& x = a.intmod_value();
  return RingElem::intmod(-x.residue, x.modulus);
}

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  require_same_ring(a, b);
  if (a.is_rational())
    return RingElem::rational(a.rational_value() * b.rational_value());
  if (a.ring().kind == RingKind::gaussian) {
    const auto& x = a.gaussian_value();
    const auto& y = b.gaussian_value();
    return RingElem::gaussian(x.re * y.re - x.im * y.im,
                              x.re * y.im + x.im * y.re);
  }
  const auto& x = a.intmod_value();
  const auto& y = b.intmod_value();
  return RingElem::intmod(x.residue * y.residue, x.modulus);
}

RingElem ring_pow_p(const Ring& r, const Prime& p, std::int64_t e) {
  switch (r.kind) {
    case RingKind::rational: return RingElem::rational(pow_p(p, e));
    case RingKind::gaussian:
      return RingElem::gaussian(pow_p(p, e), Rational(0));
    case RingKind::intmod: {
      const BigInt& m = r.modulus;
      if (e >= 0)
        return RingElem::intmod(
            powm(p.big() % m, BigInt(e), m), m);
      BigInt inv = boost::integer::mod_inverse(p.big(), m);
      if (inv == 0)
        fail(Errc::not_invertible,
             "p = " + std::to_string(p.value()) +
                 " is not invertible modulo " + m.str());
      return RingElem::intmod(powm(inv, BigInt(-e), m), m);
    }
  }
  fail(Errc::not_supported, "unknown ring");
}

std::string format_ring_elem(const RingElem& e) {
  if (e.is_rational()) return format_rational(e.rational_value());
  if (e.ring().kind == RingKind::gaussian) {
    const auto& g = e.gaussian_value();
    if (g.im == 0) return format_rational(g.re);
    const bool neg = g.im < 0;
    return format_rational(g.re) + (neg ? "-" : "+") +
           format_rational(neg ? Rational(-g.im) : g.im) + "i";
  }
  return e.intmod_value().residue.str();
}

namespace {

RingElem parse_gaussian(const std::string& s) {
  if (s.empty() || s.back() != 'i')
    return RingElem::gaussian(parse_rational(s), Rational(0));
  // Split "RE+IMi" / "RE-IMi" at the first sign past position 0; rational
  // literals contain a sign only at the front, so no deeper scan is needed.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    fail(Errc::parse_error, "bad gaussian literal: \"" + s + "\"");
  Rational re = parse_rational(s.substr(0, split));
  Rational im = parse_rational(s.substr(split + 1, s.size() - split - 2));
  if (s[split] == '-') im = -im;
  return RingElem::gaussian(std::move(re), std::move(im));
}

BigInt parse_bigint(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t = t.substr(1);
  }
  if (t.empty()) fail(Errc::parse_error, "bad integer literal: \"" + s + "\"");
  for (char c : t)
    if (c < '0' || c > '9')
      fail(Errc::parse_error, "bad integer literal: \"" + s + "\"");
  BigInt n(t);
  return neg ? BigInt(-n) : n;
}

}  // namespace

RingElem parse_ring_elem(const Ring& r, const std::string& s) {
  switch (r.kind) {
    case RingKind::rational: return RingElem::rational(parse_rational(s));
    case RingKind::gaussian: return parse_gaussian(s);
    case RingKind::intmod: return RingElem::intmod(parse_bigint(s), r.modulus);
  }
  fail(Errc::not_supported, "unknown ring");
}

RingElem parse_ring_elem_shorthand(const Ring& r, const Prime& p,
                                   const std::string& s) {
  const bool shorthand =
      s.rfind("p^", 0) == 0 || s.rfind("-p^", 0) == 0;
  if (!shorthand) return parse_ring_elem(r, s);
  Rational q = parse_rational_shorthand(p, s);
  switch (r.kind) {
    case RingKind::rational: return RingElem::rational(q);
    case RingKind::gaussian: return RingElem::gaussian(q, Rational(0));
    case RingKind::intmod: {
      // q = +-p^e: reduce through ring_pow_p to honour invertibility rules.
      const bool neg = q < 0;
      std::int64_t e = valuation(p, q).value();
      RingElem v = ring_pow_p(r, p, e);
      return neg ? ring_neg(v) : v;
    }
  }
  fail(Errc::not_supported, "unknown ring");
}

}  // namespace egorov
