#include "egorov/symbolic.hpp"

#include <algorithm>

namespace egorov {

namespace {

// Smallest integer >= x/y, for y > 0.
std::int64_t ceil_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if (x % y != 0 && x > 0) ++q;
  return q;
}

void require_same_prime(const PowSum& a, const PowSum& b) {
  if (!(a.prime() == b.prime()))
    fail(Errc::not_supported, "power sums use different primes");
}

// Combine terms with structurally equal exponent maps; keeps units p-adic
// units by re-extracting any valuation gained through cancellation.
std::vector<RatMonomial> merge_terms(const Prime& p,
                                     std::vector<RatMonomial> in) {
  std::vector<RatMonomial> out;
  for (auto& t : in) {
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].exp != t.exp) continue;
      Rational u = out[i].unit + t.unit;
      if (u == 0) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        const std::int64_t v = valuation(p, u).value();
        out[i].unit = u * pow_p(p, -v);
        out[i].exp = im_add_const(out[i].exp, v);
      }
      merged = true;
      break;
    }
    if (!merged) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

PowSum PowSum::constant(const Prime& p, const Rational& q) {
  if (q == 0) return zero(p);
  return monomial(p, q, IntegerMap::constant(0));
}

PowSum PowSum::monomial(const Prime& p, const Rational& unit, IntegerMap exp) {
  if (unit == 0) return zero(p);
  const std::int64_t v = valuation(p, unit).value();
  return PowSum(p, {{unit * pow_p(p, -v), im_add_const(exp, v)}});
}

Rational ps_eval(const PowSum& s, std::int64_t k) {
  Rational out = 0;
  for (const auto& t : s.terms()) out += t.unit * pow_p(s.prime(), t.exp(k));
  return out;
}

PowSum ps_add(const PowSum& a, const PowSum& b) {
  require_same_prime(a, b);
  std::vector<RatMonomial> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return PowSum(a.p_, merge_terms(a.p_, std::move(terms)));
}

PowSum ps_neg(const PowSum& a) {
  std::vector<RatMonomial> terms = a.terms_;
  for (auto& t : terms) t.unit = -t.unit;
  return PowSum(a.p_, std::move(terms));
}

PowSum ps_sub(const PowSum& a, const PowSum& b) { return ps_add(a, ps_neg(b)); }

PowSum ps_mul(const PowSum& a, const PowSum& b) {
  require_same_prime(a, b);
  std::vector<RatMonomial> terms;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_)
      terms.push_back({x.unit * y.unit, im_add(x.exp, y.exp)});
  return PowSum(a.p_, merge_terms(a.p_, std::move(terms)));
}

EventualVal ps_eventual_valuation(const PowSum& s) {
  std::int64_t from = 1;
  for (const auto& t : s.terms())
    from = std::max(from, t.exp.table_size() + 1);

  // Collapse each slope class into one monomial; distinct slopes cannot
  // cancel each other once the affine tails dominate.
  struct Eff {
    std::int64_t slope;
    std::int64_t off;
  };
  std::vector<Eff> effs;
  std::vector<bool> used(s.terms().size(), false);
  for (std::size_t i = 0; i < s.terms().size(); ++i) {
    if (used[i]) continue;
    const std::int64_t a = s.terms()[i].exp.slope();
    std::int64_t bmin = s.terms()[i].exp.offset();
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < s.terms().size(); ++j) {
      if (used[j] || s.terms()[j].exp.slope() != a) continue;
      used[j] = true;
      group.push_back(j);
      bmin = std::min(bmin, s.terms()[j].exp.offset());
    }
    Rational u = 0;
    for (std::size_t j : group) {
      const std::int64_t d = s.terms()[j].exp.offset() - bmin;
      u += s.terms()[j].unit *
           Rational(pow_int(s.prime().big(), static_cast<std::uint64_t>(d)));
    }
    if (u == 0) continue;
    effs.push_back({a, bmin + valuation(s.prime(), u).value()});
  }

  if (effs.empty()) return {true, IntegerMap::constant(0), from};

  std::size_t best = 0;
  for (std::size_t i = 1; i < effs.size(); ++i)
    if (effs[i].slope < effs[best].slope) best = i;
  for (std::size_t i = 0; i < effs.size(); ++i) {
    if (i == best) continue;
    // Stabilize where the minimal-slope class is strictly below the others,
    // so the ultrametric sum rule gives the valuation exactly.
    const std::int64_t da = effs[i].slope - effs[best].slope;
    const std::int64_t dc = effs[i].off - effs[best].off;
    from = std::max(from, ceil_div(1 - dc, da));
  }
  return {false, IntegerMap::affine(effs[best].slope, effs[best].off), from};
}

EventualBool ps_valuation_ge(const PowSum& s, const IntegerMap& bound) {
  const EventualVal ev = ps_eventual_valuation(s);
  if (ev.zero) return {true, ev.from};
  const EventualSign cmp = eventual_compare(ev.val, bound);
  return {cmp.sign >= 0, std::max(ev.from, cmp.from)};
}

EventualBool ps_eventually_zero(const PowSum& s) {
  const EventualVal ev = ps_eventual_valuation(s);
  return {ev.zero, ev.from};
}

EventualVal ev_min(const std::vector<EventualVal>& parts) {
  std::int64_t from = 1;
  std::vector<IntegerMap> affs;
  for (const auto& part : parts) {
    from = std::max(from, part.from);
    if (!part.zero) affs.push_back(part.val);
  }
  if (affs.empty()) return {true, IntegerMap::constant(0), from};
  std::size_t best = 0;
  for (std::size_t i = 1; i < affs.size(); ++i) {
    if (affs[i].slope() < affs[best].slope() ||
        (affs[i].slope() == affs[best].slope() &&
         affs[i].offset() < affs[best].offset()))
      best = i;
  }
  for (std::size_t i = 0; i < affs.size(); ++i) {
    if (i == best || affs[i].slope() == affs[best].slope()) continue;
    const std::int64_t da = affs[i].slope() - affs[best].slope();
    const std::int64_t dc = affs[i].offset() - affs[best].offset();
    from = std::max(from, ceil_div(-dc, da));
  }
  return {false, affs[best], from};
}

EventualBool eb_and(const EventualBool& a, const EventualBool& b) {
  if (a.value && b.value) return {true, std::max(a.from, b.from)};
  if (!a.value && !b.value) return {false, std::min(a.from, b.from)};
  return {false, a.value ? b.from : a.from};
}

}  // namespace egorov
