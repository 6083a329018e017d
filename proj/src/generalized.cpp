#include "egorov/generalized.hpp"

#include <algorithm>

namespace egorov {

namespace {

constexpr std::int64_t kUnknownScanCap = 200;

// Smallest integer >= x/y, for y > 0.
std::int64_t ceil_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if (x % y != 0 && x > 0) ++q;
  return q;
}

void require_combinable(const CoeffSum& a, const CoeffSum& b) {
  if (a.ring() != b.ring())
    fail(Errc::mixed_rings, "coefficient sums use different rings");
  if (!(a.prime() == b.prime()))
    fail(Errc::not_supported, "coefficient sums use different primes");
}

std::vector<CoeffSum::ModMonomial> merge_mods(
    const BigInt& m, std::vector<CoeffSum::ModMonomial> in) {
  std::vector<CoeffSum::ModMonomial> out;
  for (auto& t : in) {
    BigInt u = t.unit % m;
    if (u < 0) u += m;
    if (u == 0) continue;
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].exp != t.exp) continue;
      BigInt w = (out[i].unit + u) % m;
      if (w == 0)
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      else
        out[i].unit = std::move(w);
      merged = true;
      break;
    }
    if (!merged) out.push_back({std::move(u), std::move(t.exp)});
  }
  return out;
}

}  // namespace

CoeffSum CoeffSum::zero(const Ring& r, const Prime& p) { return CoeffSum(r, p); }

CoeffSum CoeffSum::monomial(const Ring& r, const Prime& p, const RingElem& unit,
                            IntegerMap exp) {
  if (unit.ring() != r)
    fail(Errc::mixed_rings, "unit does not belong to the stated ring");
  CoeffSum out(r, p);
  if (unit.is_zero()) return out;
  switch (r.kind) {
    case RingKind::rational:
      out.re_ = PowSum::monomial(p, unit.rational_value(), std::move(exp));
      break;
    case RingKind::gaussian: {
      const auto& g = unit.gaussian_value();
      out.re_ = PowSum::monomial(p, g.re, exp);
      out.im_ = PowSum::monomial(p, g.im, std::move(exp));
      break;
    }
    case RingKind::intmod:
      out.mods_ = {{unit.intmod_value().residue, std::move(exp)}};
      break;
  }
  return out;
}

CoeffSum cs_add(const CoeffSum& a, const CoeffSum& b) {
  require_combinable(a, b);
  CoeffSum out(a.ring_, a.p_);
  out.re_ = ps_add(a.re_, b.re_);
  out.im_ = ps_add(a.im_, b.im_);
  std::vector<CoeffSum::ModMonomial> mods = a.mods_;
  mods.insert(mods.end(), b.mods_.begin(), b.mods_.end());
  out.mods_ = merge_mods(a.ring_.modulus == 0 ? BigInt(1) : a.ring_.modulus,
                         std::move(mods));
  return out;
}

CoeffSum cs_neg(const CoeffSum& a) {
  CoeffSum out(a.ring_, a.p_);
  out.re_ = ps_neg(a.re_);
  out.im_ = ps_neg(a.im_);
  out.mods_ = a.mods_;
  for (auto& t : out.mods_) t.unit = a.ring_.modulus - t.unit;
  return out;
}

CoeffSum cs_sub(const CoeffSum& a, const CoeffSum& b) {
  return cs_add(a, cs_neg(b));
}

CoeffSum cs_mul(const CoeffSum& a, const CoeffSum& b) {
  require_combinable(a, b);
  CoeffSum out(a.ring_, a.p_);
  switch (a.ring_.kind) {
    case RingKind::rational:
      out.re_ = ps_mul(a.re_, b.re_);
      break;
    case RingKind::gaussian:
      out.re_ = ps_sub(ps_mul(a.re_, b.re_), ps_mul(a.im_, b.im_));
      out.im_ = ps_add(ps_mul(a.re_, b.im_), ps_mul(a.im_, b.re_));
      break;
    case RingKind::intmod: {
      std::vector<CoeffSum::ModMonomial> mods;
      for (const auto& x : a.mods_)
        for (const auto& y : b.mods_)
          mods.push_back({x.unit * y.unit, im_add(x.exp, y.exp)});
      out.mods_ = merge_mods(a.ring_.modulus, std::move(mods));
      break;
    }
  }
  return out;
}

RingElem cs_eval(const CoeffSum& s, std::int64_t k) {
  switch (s.ring().kind) {
    case RingKind::rational:
      return RingElem::rational(ps_eval(s.re(), k));
    case RingKind::gaussian:
      return RingElem::gaussian(ps_eval(s.re(), k), ps_eval(s.im(), k));
    case RingKind::intmod: {
      RingElem out = RingElem::zero(s.ring());
      for (const auto& t : s.mods())
        out = ring_add(out,
                       ring_mul(RingElem::intmod(t.unit, s.ring().modulus),
                                ring_pow_p(s.ring(), s.prime(), t.exp(k))));
      return out;
    }
  }
  fail(Errc::not_supported, "unreachable ring kind");
}

namespace {

CoeffZero mod_eventual_zero(const CoeffSum& s) {
  const BigInt& m = s.ring().modulus;
  const Prime& p = s.prime();
  const std::int64_t alpha = m % p.big() == 0 ? int_valuation(p, m) : 0;
  const BigInt m0 = m / pow_int(p.big(), static_cast<std::uint64_t>(alpha));

  std::int64_t from0 = 1;
  for (const auto& t : s.mods())
    from0 = std::max(from0, t.exp.table_size() + 1);

  // Collapse each slope class into one residue monomial, valid past from0.
  struct Eff {
    BigInt unit;
    std::int64_t slope;
    std::int64_t off;
  };
  std::vector<Eff> effs;
  std::vector<bool> used(s.mods().size(), false);
  for (std::size_t i = 0; i < s.mods().size(); ++i) {
    if (used[i]) continue;
    const std::int64_t a = s.mods()[i].exp.slope();
    std::int64_t bmin = s.mods()[i].exp.offset();
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < s.mods().size(); ++j) {
      if (used[j] || s.mods()[j].exp.slope() != a) continue;
      used[j] = true;
      group.push_back(j);
      bmin = std::min(bmin, s.mods()[j].exp.offset());
    }
    BigInt u = 0;
    for (std::size_t j : group) {
      const std::int64_t d = s.mods()[j].exp.offset() - bmin;
      u = (u + s.mods()[j].unit *
                   pow_int(p.big(), static_cast<std::uint64_t>(d))) %
          m;
    }
    if (u == 0) continue;
    effs.push_back({std::move(u), a, bmin});
  }

  if (effs.empty()) return {CoeffZero::Kind::zero_from, from0};
  if (effs.size() > 1) return {CoeffZero::Kind::undecidable, 0};

  const Eff& t = effs.front();
  if (t.unit % m0 != 0) return {CoeffZero::Kind::nonzero_from, 1};
  // Here p divides m (alpha >= 1): the term vanishes exactly when the
  // p-part saturates, i.e. v_p(unit) + exp(k) >= alpha.
  const std::int64_t vu = std::min<std::int64_t>(int_valuation(p, t.unit), alpha);
  if (t.slope > 0)
    return {CoeffZero::Kind::zero_from,
            std::max(from0, ceil_div(alpha - vu - t.off, t.slope))};
  if (t.slope == 0)
    return vu + t.off >= alpha
               ? CoeffZero{CoeffZero::Kind::zero_from, from0}
               : CoeffZero{CoeffZero::Kind::nonzero_from, from0};
  return {CoeffZero::Kind::nonzero_from,
          std::max(from0, ceil_div(vu + t.off - alpha + 1, -t.slope))};
}

}  // namespace

CoeffZero cs_eventual_zero(const CoeffSum& s) {
  switch (s.ring().kind) {
    case RingKind::rational: {
      const EventualBool z = ps_eventually_zero(s.re());
      return {z.value ? CoeffZero::Kind::zero_from
                      : CoeffZero::Kind::nonzero_from,
              z.from};
    }
    case RingKind::gaussian: {
      const EventualBool zr = ps_eventually_zero(s.re());
      const EventualBool zi = ps_eventually_zero(s.im());
      if (zr.value && zi.value)
        return {CoeffZero::Kind::zero_from, std::max(zr.from, zi.from)};
      std::int64_t from = 0;
      if (!zr.value) from = zr.from;
      if (!zi.value) from = from == 0 ? zi.from : std::min(from, zi.from);
      return {CoeffZero::Kind::nonzero_from, from};
    }
    case RingKind::intmod:
      return mod_eventual_zero(s);
  }
  fail(Errc::not_supported, "unreachable ring kind");
}

ScalarFamily ScalarFamily::make(const Ring& r, std::optional<Prime> p,
                                std::vector<RingElem> prefix, Tail tail) {
  for (const auto& e : prefix)
    if (e.ring() != r)
      fail(Errc::mixed_rings, "prefix entry is not in the stated ring");

  // Reduce to a tail that is either all-zero or live (nonzero everywhere
  // past the prefix), materializing exact values into the prefix until the
  // symbolic tail behavior has stabilized.
  bool decided = true;
  if (auto* ct = std::get_if<ConstantTail>(&tail)) {
    if (ct->value.is_zero()) tail = ZeroTail{};
  }
  if (auto* mt = std::get_if<MonomialTail>(&tail)) {
    if (mt->unit.is_zero()) {
      tail = ZeroTail{};
    } else if (r.kind == RingKind::intmod) {
      if (!p) fail(Errc::not_supported, "monomial tail needs a prime");
      tail = SumTail{CoeffSum::monomial(r, *p, mt->unit, mt->exp)};
    }
  }
  if (auto* st = std::get_if<SumTail>(&tail)) {
    const CoeffSum cs = st->value;
    if (!p) p = cs.prime();
    if (!(*p == cs.prime()))
      fail(Errc::not_supported, "tail uses a different prime");
    const CoeffZero cz = cs_eventual_zero(cs);
    switch (cz.kind) {
      case CoeffZero::Kind::zero_from: {
        for (std::int64_t k = static_cast<std::int64_t>(prefix.size()) + 1;
             k < cz.from; ++k)
          prefix.push_back(cs_eval(cs, k));
        tail = ZeroTail{};
        break;
      }
      case CoeffZero::Kind::nonzero_from: {
        for (std::int64_t k = static_cast<std::int64_t>(prefix.size()) + 1;
             k < cz.from; ++k)
          prefix.push_back(cs_eval(cs, k));
        // Collapse single-term sums to the plain monomial shape.
        switch (r.kind) {
          case RingKind::rational:
            if (cs.re().terms().size() == 1)
              tail = MonomialTail{
                  RingElem::rational(cs.re().terms().front().unit),
                  cs.re().terms().front().exp};
            break;
          case RingKind::gaussian:
            if (cs.re().terms().size() == 1 && cs.im().no_terms())
              tail = MonomialTail{
                  RingElem::gaussian(cs.re().terms().front().unit, 0),
                  cs.re().terms().front().exp};
            else if (cs.re().no_terms() && cs.im().terms().size() == 1)
              tail = MonomialTail{
                  RingElem::gaussian(0, cs.im().terms().front().unit),
                  cs.im().terms().front().exp};
            else if (cs.re().terms().size() == 1 &&
                     cs.im().terms().size() == 1 &&
                     cs.re().terms().front().exp == cs.im().terms().front().exp)
              tail = MonomialTail{
                  RingElem::gaussian(cs.re().terms().front().unit,
                                     cs.im().terms().front().unit),
                  cs.re().terms().front().exp};
            break;
          case RingKind::intmod:
            if (cs.mods().size() == 1)
              tail =
                  MonomialTail{RingElem::intmod(cs.mods().front().unit,
                                                r.modulus),
                               cs.mods().front().exp};
            break;
        }
        break;
      }
      case CoeffZero::Kind::undecidable:
        decided = false;
        break;
    }
  }
  if (std::holds_alternative<ZeroTail>(tail)) {
    while (!prefix.empty() && prefix.back().is_zero()) prefix.pop_back();
  }
  return ScalarFamily(r, p, std::move(prefix), std::move(tail), decided);
}

ScalarFamily ScalarFamily::from_coeffsum(std::vector<RingElem> prefix,
                                         const CoeffSum& tail) {
  return make(tail.ring(), tail.prime(), std::move(prefix), SumTail{tail});
}

RingElem ScalarFamily::at(std::int64_t k) const {
  if (k < 1) fail(Errc::index_zero, "scalar families start at k = 1");
  if (k <= static_cast<std::int64_t>(prefix_.size()))
    return prefix_[static_cast<std::size_t>(k - 1)];
  struct Visitor {
    const ScalarFamily& s;
    std::int64_t k;
    RingElem operator()(const ZeroTail&) const {
      return RingElem::zero(s.ring_);
    }
    RingElem operator()(const ConstantTail& t) const { return t.value; }
    RingElem operator()(const MonomialTail& t) const {
      return ring_mul(t.unit, ring_pow_p(s.ring_, *s.p_, t.exp(k)));
    }
    RingElem operator()(const SumTail& t) const { return cs_eval(t.value, k); }
  };
  return std::visit(Visitor{*this, k}, tail_);
}

Verdict scalar_is_zero(const ScalarFamily& s) {
  if (!s.tail_decided()) return Verdict::unknown(kUnknownScanCap);
  if (std::holds_alternative<ScalarFamily::ZeroTail>(s.tail())) {
    const std::int64_t n = static_cast<std::int64_t>(s.prefix().size()) + 1;
    return Verdict::proved(
        n, Certificate{"eventually-zero", std::nullopt,
                       "every entry from the threshold on is zero"});
  }
  const std::int64_t plen = static_cast<std::int64_t>(s.prefix().size());
  return Verdict::refuted(
      Schedule{IntegerMap::affine(1, plen), std::nullopt});
}

namespace {

CoeffSum tail_as_coeffsum(const ScalarFamily& s, const Prime& p) {
  struct Visitor {
    const Ring& r;
    const Prime& p;
    CoeffSum operator()(const ScalarFamily::ZeroTail&) const {
      return CoeffSum::zero(r, p);
    }
    CoeffSum operator()(const ScalarFamily::ConstantTail& t) const {
      return CoeffSum::monomial(r, p, t.value, IntegerMap::constant(0));
    }
    CoeffSum operator()(const ScalarFamily::MonomialTail& t) const {
      return CoeffSum::monomial(r, p, t.unit, t.exp);
    }
    CoeffSum operator()(const ScalarFamily::SumTail& t) const {
      return t.value;
    }
  };
  return std::visit(Visitor{s.ring(), p}, s.tail());
}

bool tail_is_flat(const ScalarFamily& s) {
  return std::holds_alternative<ScalarFamily::ZeroTail>(s.tail()) ||
         std::holds_alternative<ScalarFamily::ConstantTail>(s.tail());
}

RingElem flat_tail_value(const ScalarFamily& s) {
  if (auto* ct = std::get_if<ScalarFamily::ConstantTail>(&s.tail()))
    return ct->value;
  return RingElem::zero(s.ring());
}

}  // namespace

Verdict scalar_equal(const ScalarFamily& s, const ScalarFamily& t) {
  if (s.ring() != t.ring())
    fail(Errc::mixed_rings, "scalar families use different rings");
  const std::int64_t plen =
      std::max(static_cast<std::int64_t>(s.prefix().size()),
               static_cast<std::int64_t>(t.prefix().size()));
  std::vector<RingElem> prefix;
  prefix.reserve(static_cast<std::size_t>(plen));
  for (std::int64_t k = 1; k <= plen; ++k)
    prefix.push_back(ring_sub(s.at(k), t.at(k)));

  if (tail_is_flat(s) && tail_is_flat(t)) {
    const RingElem d = ring_sub(flat_tail_value(s), flat_tail_value(t));
    std::optional<Prime> p = s.prime() ? s.prime() : t.prime();
    return scalar_is_zero(
        ScalarFamily::make(s.ring(), p, std::move(prefix),
                           d.is_zero()
                               ? ScalarFamily::Tail(ScalarFamily::ZeroTail{})
                               : ScalarFamily::Tail(
                                     ScalarFamily::ConstantTail{d})));
  }

  std::optional<Prime> p = s.prime() ? s.prime() : t.prime();
  if (!p) fail(Errc::not_supported, "symbolic tails need a prime");
  const CoeffSum d = cs_sub(tail_as_coeffsum(s, *p), tail_as_coeffsum(t, *p));
  return scalar_is_zero(ScalarFamily::from_coeffsum(std::move(prefix), d));
}

PointFamily PointFamily::make(const Space& s, std::vector<Point> prefix,
                              Tail tail) {
  for (const auto& x : prefix) require_in_space(s, x);
  if (auto* c = std::get_if<ConstantPoint>(&tail)) {
    require_in_space(s, c->value);
  } else {
    auto& m = std::get<MonomialPoint>(tail);
    if (!s.is_qp())
      fail(Errc::not_supported,
           "monomial point tails need a coordinate space");
    if (static_cast<std::int64_t>(m.coords.size()) != s.dim())
      fail(Errc::dimension_mismatch, "coordinate count does not match");
  }
  return PointFamily(s, std::move(prefix), std::move(tail));
}

Point PointFamily::at(std::int64_t k) const {
  if (k < 1) fail(Errc::index_zero, "point families start at k = 1");
  if (k <= static_cast<std::int64_t>(prefix_.size()))
    return prefix_[static_cast<std::size_t>(k - 1)];
  if (auto* c = std::get_if<ConstantPoint>(&tail_)) return c->value;
  const auto& m = std::get<MonomialPoint>(tail_);
  std::vector<Rational> coords;
  coords.reserve(m.coords.size());
  for (const auto& cm : m.coords)
    coords.push_back(cm.base == 0
                         ? Rational(0)
                         : cm.base * pow_p(space_.prime(), cm.exp(k)));
  return Point::qp(std::move(coords));
}

namespace {

// Per-coordinate symbolic view of a point tail.
std::vector<PowSum> tail_coords(const PointFamily& x, const Prime& p) {
  std::vector<PowSum> out;
  if (auto* c = std::get_if<PointFamily::ConstantPoint>(&x.tail())) {
    for (const auto& q : c->value.coords())
      out.push_back(PowSum::constant(p, q));
    return out;
  }
  for (const auto& cm : std::get<PointFamily::MonomialPoint>(x.tail()).coords)
    out.push_back(PowSum::monomial(p, cm.base, cm.exp));
  return out;
}

}  // namespace

Verdict gpoint_equiv(const PointFamily& x, const PointFamily& y) {
  if (x.space() != y.space())
    fail(Errc::mixed_spaces, "point families live in different spaces");
  const Space& s = x.space();
  bool eventually_equal;
  std::int64_t from = 1;
  if (s.is_discrete()) {
    const auto& cx = std::get<PointFamily::ConstantPoint>(x.tail());
    const auto& cy = std::get<PointFamily::ConstantPoint>(y.tail());
    eventually_equal = cx.value == cy.value;
  } else {
    const Prime& p = s.prime();
    const std::vector<PowSum> xc = tail_coords(x, p);
    const std::vector<PowSum> yc = tail_coords(y, p);
    eventually_equal = true;
    std::int64_t eq_from = 1, ne_from = 0;
    for (std::int64_t i = 0; i < s.dim(); ++i) {
      const EventualBool z = ps_eventually_zero(
          ps_sub(xc[static_cast<std::size_t>(i)], yc[static_cast<std::size_t>(i)]));
      if (z.value) {
        eq_from = std::max(eq_from, z.from);
      } else {
        eventually_equal = false;
        ne_from = ne_from == 0 ? z.from : std::min(ne_from, z.from);
      }
    }
    from = eventually_equal ? eq_from : ne_from;
  }
  const std::int64_t plen =
      std::max(static_cast<std::int64_t>(x.prefix().size()),
               static_cast<std::int64_t>(y.prefix().size()));
  std::int64_t n = std::max(from, plen + 1);
  if (eventually_equal) {
    while (n > 1 && x.at(n - 1) == y.at(n - 1)) --n;
    return Verdict::proved(
        n, Certificate{"tails-agree", std::nullopt,
                       "the representatives coincide from the threshold on"});
  }
  while (n > 1 && !(x.at(n - 1) == y.at(n - 1))) --n;
  return Verdict::refuted(
      Schedule{IntegerMap::affine(1, n - 1), std::nullopt});
}

Verdict is_compactly_supported(const PointFamily& x) {
  const Space& s = x.space();
  std::optional<Ball> k_ball;
  if (auto* c = std::get_if<PointFamily::ConstantPoint>(&x.tail())) {
    k_ball = Ball(s, c->value, s.is_discrete() ? 1 : 0);
  } else {
    const auto& m = std::get<PointFamily::MonomialPoint>(x.tail());
    std::int64_t tables = 0;
    for (const auto& cm : m.coords)
      tables = std::max(tables, cm.exp.table_size());
    bool escapes = false;
    std::int64_t gamma = 0;  // containing ball exponent, capped at 0
    for (const auto& cm : m.coords) {
      if (cm.base == 0) continue;
      const IntegerMap v =
          im_add_const(cm.exp, valuation(s.prime(), cm.base).value());
      if (v.slope() < 0) {
        escapes = true;
        continue;
      }
      std::int64_t lo = v(v.table_size() + 1);
      for (std::int64_t k = 1; k <= v.table_size(); ++k)
        lo = std::min(lo, v(k));
      gamma = std::min(gamma, lo);
    }
    if (escapes) {
      // Norms grow without bound: schedule every index past the tables and
      // attach the tail itself as the witness points.
      const std::int64_t f = tables + 1 +
          static_cast<std::int64_t>(x.prefix().size());
      std::vector<PointFamily::CoordMonomial> coords;
      for (const auto& cm : m.coords) {
        if (cm.exp.table_size() >= f) fail(Errc::not_supported, "unreachable");
        coords.push_back(
            {cm.base, IntegerMap::affine(cm.exp.slope(),
                                         cm.exp.offset() +
                                             cm.exp.slope() * (f - 1))});
      }
      return Verdict::refuted(Schedule{
          IntegerMap::affine(1, f - 1),
          PointFamily::make(s, {}, PointFamily::MonomialPoint{coords})});
    }
    std::vector<Rational> zero_coords(static_cast<std::size_t>(s.dim()), 0);
    k_ball = Ball(s, Point::qp(std::move(zero_coords)), gamma);
  }
  std::int64_t n = static_cast<std::int64_t>(x.prefix().size()) + 1;
  while (n > 1 && in_ball(x.at(n - 1), *k_ball)) --n;
  return Verdict::proved(
      n, Certificate{"tail-ball", k_ball,
                     "all points from the threshold on lie in the ball"});
}

}  // namespace egorov
