#include "egorov/numbers.hpp"

#include <boost/integer/mod_inverse.hpp>

namespace egorov {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin with bases {2,3,5,7}: exact for n < 3'215'031'751,
// which covers the whole supported range below 2^31.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(std::int64_t p) : p_(p) {
  if (p < 2 || p >= (std::int64_t(1) << 31))
    fail(Errc::non_prime, "prime must satisfy 2 <= p < 2^31, got " +
                              std::to_string(p));
  if (!is_prime_u64(static_cast<std::uint64_t>(p)))
    fail(Errc::non_prime, std::to_string(p) + " is not prime");
}

std::int64_t int_valuation(const Prime& p, const BigInt& n) {
  if (n == 0) fail(Errc::not_supported, "valuation of integer zero");
  BigInt cur = abs(n);
  BigInt q, r;
  const BigInt pb = p.big();
  std::int64_t v = 0;
  for (;;) {
    divide_qr(cur, pb, q, r);
    if (r != 0) return v;
    cur = q;
    ++v;
  }
}

ValuationExp valuation(const Prime& p, const Rational& q) {
  if (q == 0) return ValuationExp::infinity();
  return ValuationExp::finite(int_valuation(p, numerator(q)) -
                              int_valuation(p, denominator(q)));
}

BigInt pow_int(const BigInt& base, std::uint64_t e) {
  BigInt acc = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

Rational pow_p(const Prime& p, std::int64_t e) {
  if (e >= 0) return Rational(pow_int(p.big(), static_cast<std::uint64_t>(e)));
  return Rational(1, pow_int(p.big(), static_cast<std::uint64_t>(-e)));
}

Rational digit_truncate(const Prime& p, const Rational& q,
                        std::int64_t gamma) {
  if (q == 0) return Rational(0);
  const std::int64_t v = valuation(p, q).value();
  if (v >= gamma) return Rational(0);

  // Split q = p^v * a/b with p dividing neither a nor b, then reduce a/b
  // modulo p^(gamma - v).
  BigInt a = numerator(q);
  BigInt b = denominator(q);
  const BigInt pb = p.big();
  BigInt quo, rem;
  for (;;) {
    divide_qr(a, pb, quo, rem);
    if (rem != 0) break;
    a = quo;
  }
  for (;;) {
    divide_qr(b, pb, quo, rem);
    if (rem != 0) break;
    b = quo;
  }

  const BigInt m = pow_int(pb, static_cast<std::uint64_t>(gamma - v));
  const BigInt binv = boost::integer::mod_inverse(b, m);
  BigInt r = (a % m) * binv % m;
  if (r < 0) r += m;
  return Rational(r) * pow_p(p, v);
}

DigitExpansion digit_expansion(const Prime& p, const Rational& q) {
  DigitExpansion out;
  if (q == 0) return out;
  if (q < 0) fail(Errc::not_supported, "digit expansion of a negative value");
  const std::int64_t v = valuation(p, q).value();
  BigInt scaled = numerator(q * pow_p(p, -v));
  if (denominator(q * pow_p(p, -v)) != 1)
    fail(Errc::not_supported, "digit expansion requires a p-power denominator");
  out.start = v;
  const BigInt pb = p.big();
  BigInt quo, rem;
  while (scaled != 0) {
    divide_qr(scaled, pb, quo, rem);
    out.digits.push_back(static_cast<int>(rem));
    scaled = quo;
  }
  return out;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  std::string t = s;
  bool negative = false;
  if (!t.empty() && t[0] == '-') {
    negative = true;
    t = t.substr(1);
  }
  const auto slash = t.find('/');
  std::string num = (slash == std::string::npos) ? t : t.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : t.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    fail(Errc::parse_error, "bad rational literal: \"" + s + "\"");
  BigInt n(num), d(den);
  if (d == 0) fail(Errc::parse_error, "zero denominator in \"" + s + "\"");
  if (negative) n = -n;
  return Rational(n, d);
}

std::string format_rational(const Rational& q) { return q.str(); }

Rational parse_rational_shorthand(const Prime& p, const std::string& s) {
  std::string t = s;
  bool negative = false;
  if (!t.empty() && t[0] == '-') {
    negative = true;
    t = t.substr(1);
  }
  if (t.size() >= 3 && t[0] == 'p' && t[1] == '^') {
    std::string e = t.substr(2);
    bool eneg = false;
    if (!e.empty() && e[0] == '-') {
      eneg = true;
      e = e.substr(1);
    }
    if (!all_digits(e) || e.size() > 9)
      fail(Errc::parse_error, "bad power shorthand: \"" + s + "\"");
    std::int64_t exp = std::stoll(e);
    Rational r = pow_p(p, eneg ? -exp : exp);
    return negative ? -r : r;
  }
  return parse_rational(s);
}

}  // namespace egorov
