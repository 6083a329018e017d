#include <doctest.h>

#include <vector>

#include "egorov/family.hpp"
#include "egorov/normal_form.hpp"
#include "egorov/symbolic.hpp"
#include "test_util.hpp"

using namespace egorov;

namespace {

const Space kLine = Space::qp(Prime(5), 1);
const Ring kQ = Ring::rational_ring();

Point pt(Rational q) { return Point::qp({std::move(q)}); }

IntegerMap random_map(testutil::TestRng& rng, std::int64_t slope_lo,
                      std::int64_t slope_hi) {
  std::vector<std::int64_t> table;
  std::int64_t len = rng.range(0, 2);
  for (std::int64_t i = 0; i < len; ++i) table.push_back(rng.range(-3, 3));
  return IntegerMap::with_table(std::move(table),
                                rng.range(slope_lo, slope_hi),
                                rng.range(-3, 3));
}

FamilyPtr random_leaf(testutil::TestRng& rng, const Space& s, const Ring& r) {
  if (rng.flip()) {
    return SequenceFamily::constant(testutil::random_step(rng, s, r, 3));
  }
  // Center either fixed or sliding along a monomial path.
  Point base = rng.flip() ? pt(Rational(0)) : testutil::random_point(rng, s, -2, 2);
  IntegerMap center_exp =
      rng.flip() ? IntegerMap::constant(0) : random_map(rng, 1, 2);
  return SequenceFamily::monomial_indicator(
      s, r, testutil::random_nonzero_elem(rng, r, s.prime()),
      random_map(rng, 0, 2), base, center_exp, random_map(rng, -1, 2));
}

FamilyPtr random_family(testutil::TestRng& rng, const Space& s, const Ring& r,
                        int depth) {
  if (depth == 0) return random_leaf(rng, s, r);
  switch (rng.below(4)) {
    case 0: {
      std::vector<StepFunction> prefix;
      std::int64_t len = rng.range(1, 3);
      for (std::int64_t i = 0; i < len; ++i)
        prefix.push_back(testutil::random_step(rng, s, r, 2));
      return SequenceFamily::explicit_then(std::move(prefix),
                                           random_family(rng, s, r, depth - 1));
    }
    case 1:
      return SequenceFamily::sum(random_family(rng, s, r, depth - 1),
                                 random_family(rng, s, r, depth - 1));
    case 2:
      return SequenceFamily::prod(random_family(rng, s, r, depth - 1),
                                  random_family(rng, s, r, depth - 1));
    default:
      return SequenceFamily::neg(random_family(rng, s, r, depth - 1));
  }
}

}  // namespace

TEST_CASE("power sums evaluate exactly and decide eventual valuation") {
  Prime p(5);
  testutil::TestRng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    PowSum s = PowSum::zero(p);
    std::vector<std::pair<Rational, IntegerMap>> raw;
    std::int64_t n = rng.range(0, 3);
    for (std::int64_t i = 0; i < n; ++i) {
      Rational unit = testutil::unit_times_power(rng, p, 0);
      IntegerMap exp = random_map(rng, -1, 2);
      raw.emplace_back(unit, exp);
      s = ps_add(s, PowSum::monomial(p, unit, exp));
    }
    for (std::int64_t k = 1; k <= 10; ++k) {
      Rational want = 0;
      for (const auto& [u, e] : raw) want += u * pow_p(p, e(k));
      CHECK(ps_eval(s, k) == want);
    }
    EventualVal ev = ps_eventual_valuation(s);
    for (std::int64_t k = ev.from; k <= ev.from + 40; ++k) {
      Rational v = ps_eval(s, k);
      if (ev.zero) {
        CHECK(v == 0);
      } else {
        REQUIRE(v != 0);
        CHECK(valuation(p, v).value() == ev.val(k));
      }
    }
  }
}

TEST_CASE("power sum invariant: each term's valuation equals its exponent") {
  Prime p(3);
  // 6 = 2*3: the unit part is extracted automatically.
  PowSum s = PowSum::monomial(p, Rational(6), IntegerMap::affine(1, 0));
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].unit == Rational(2));
  CHECK(s.terms()[0].exp == IntegerMap::affine(1, 1));
  CHECK(ps_eval(s, 2) == Rational(54));
}

TEST_CASE("cancellation inside a power sum is recognized") {
  Prime p(5);
  PowSum a = PowSum::monomial(p, Rational(1), IntegerMap::affine(1, 0));
  PowSum b = PowSum::monomial(p, Rational(2), IntegerMap::constant(3));
  PowSum s = ps_sub(ps_add(a, b), ps_add(b, a));
  CHECK(s.no_terms());
  EventualVal ev = ps_eventual_valuation(s);
  CHECK(ev.zero);

  // p^k + p^3 - p^3: survives with valuation k.
  PowSum t = ps_sub(ps_add(a, b), b);
  EventualVal et = ps_eventual_valuation(t);
  CHECK(!et.zero);
  CHECK(et.val == IntegerMap::affine(1, 0));

  EventualBool ge = ps_valuation_ge(t, IntegerMap::constant(10));
  CHECK(ge.value);
  for (std::int64_t k = ge.from; k <= ge.from + 20; ++k)
    CHECK(valuation(p, ps_eval(t, k)).value() >= 10);
  CHECK(!ps_eventually_zero(t).value);
  CHECK(ps_eventually_zero(s).value);
}

TEST_CASE("coefficient sums evaluate exactly in every ring") {
  Prime p(5);
  testutil::TestRng rng(53);
  for (const Ring& r : {Ring::rational_ring(), Ring::gaussian_ring(),
                        Ring::intmod_ring(BigInt(6))}) {
    for (int trial = 0; trial < 80; ++trial) {
      CoeffSum a = CoeffSum::zero(r, p);
      CoeffSum b = CoeffSum::zero(r, p);
      std::vector<std::pair<RingElem, IntegerMap>> ra, rb;
      for (std::int64_t i = rng.range(0, 2); i > 0; --i) {
        RingElem u = testutil::random_nonzero_elem(rng, r, p);
        IntegerMap e = random_map(rng, 0, 2);
        ra.emplace_back(u, e);
        a = cs_add(a, CoeffSum::monomial(r, p, u, e));
      }
      for (std::int64_t i = rng.range(0, 2); i > 0; --i) {
        RingElem u = testutil::random_nonzero_elem(rng, r, p);
        IntegerMap e = random_map(rng, 0, 2);
        rb.emplace_back(u, e);
        b = cs_add(b, CoeffSum::monomial(r, p, u, e));
      }
      auto direct = [&](const std::vector<std::pair<RingElem, IntegerMap>>& v,
                        std::int64_t k) {
        RingElem acc = RingElem::zero(r);
        for (const auto& [u, e] : v)
          acc = ring_add(acc, ring_mul(u, ring_pow_p(r, p, e(k))));
        return acc;
      };
      for (std::int64_t k = 1; k <= 8; ++k) {
        RingElem va = direct(ra, k);
        RingElem vb = direct(rb, k);
        CHECK(cs_eval(a, k) == va);
        CHECK(cs_eval(cs_add(a, b), k) == ring_add(va, vb));
        CHECK(cs_eval(cs_mul(a, b), k) == ring_mul(va, vb));
        CHECK(cs_eval(cs_neg(a), k) == ring_neg(va));
        CHECK(cs_eval(cs_sub(a, b), k) == ring_sub(va, vb));
      }
      CoeffZero cz = cs_eventual_zero(cs_sub(a, a));
      REQUIRE(cz.kind == CoeffZero::Kind::zero_from);
      CoeffZero single = cs_eventual_zero(a);
      if (single.kind == CoeffZero::Kind::zero_from) {
        for (std::int64_t k = single.from; k <= single.from + 30; ++k)
          CHECK(cs_eval(a, k).is_zero());
      } else if (single.kind == CoeffZero::Kind::nonzero_from) {
        for (std::int64_t k = single.from; k <= single.from + 30; ++k)
          CHECK(!cs_eval(a, k).is_zero());
      }
    }
  }
}

TEST_CASE("modular sums with several exponent slopes stay undecided") {
  Prime p(5);
  Ring r6 = Ring::intmod_ring(BigInt(6));
  // 5^k + 5^(2k) mod 6 alternates between 0 and 2: no affine analysis
  // can settle it, and the calculus says so instead of guessing.
  CoeffSum s = cs_add(
      CoeffSum::monomial(r6, p, RingElem::intmod(BigInt(1), BigInt(6)),
                         IntegerMap::affine(1, 0)),
      CoeffSum::monomial(r6, p, RingElem::intmod(BigInt(1), BigInt(6)),
                         IntegerMap::affine(2, 0)));
  CHECK(cs_eventual_zero(s).kind == CoeffZero::Kind::undecidable);
  CHECK(cs_eval(s, 1).is_zero());   // 5 + 25 = 30 = 0 mod 6
  CHECK(!cs_eval(s, 2).is_zero());  // 25 + 625 = 650 = 2 mod 6
}

TEST_CASE("family nodes produce the expected members") {
  StepFunction f = char_fn(Ball(kLine, pt(Rational(1)), 0),
                           RingElem::rational(Rational(2)));
  FamilyPtr c = SequenceFamily::constant(f);
  CHECK(nth(c, 1) == f);
  CHECK(nth(c, 99) == f);
  CHECK_THROWS_AS(nth(c, 0), Error);

  StepFunction g = char_fn(Ball(kLine, pt(Rational(0)), 0),
                           RingElem::rational(Rational(7)));
  FamilyPtr e = SequenceFamily::explicit_then({g}, c);
  CHECK(nth(e, 1) == g);
  CHECK(nth(e, 2) == f);  // the tail keeps the original index

  FamilyPtr s = SequenceFamily::sum(c, c);
  CHECK(nth(s, 3) == add(f, f));
  FamilyPtr m = SequenceFamily::prod(c, e);
  CHECK(nth(m, 1) == mul(f, g));
  FamilyPtr n = SequenceFamily::neg(c);
  CHECK(nth(n, 4) == neg(f));
}

TEST_CASE("monomial indicator members scale coefficient, center and radius") {
  // k -> p^k on Ball(p^k, 2k+1).
  FamilyPtr u = SequenceFamily::monomial_indicator(
      kLine, kQ, RingElem::rational(Rational(1)), IntegerMap::affine(1, 0),
      pt(Rational(1)), IntegerMap::affine(1, 0), IntegerMap::affine(2, 1));
  for (std::int64_t k : {1, 2, 5}) {
    StepFunction fk = nth(u, k);
    REQUIRE(fk.pieces().size() == 1);
    const auto& piece = fk.pieces()[0];
    CHECK(piece.value == RingElem::rational(pow_p(kLine.prime(), k)));
    CHECK(piece.ball.gamma() == 2 * k + 1);
    CHECK(piece.ball.center().coords()[0] == pow_p(kLine.prime(), k));
  }
  // Zero center base stays pinned at the origin.
  FamilyPtr v = SequenceFamily::monomial_indicator(
      kLine, kQ, RingElem::rational(Rational(3)), IntegerMap::constant(0),
      pt(Rational(0)), IntegerMap::affine(1, 0), IntegerMap::constant(2));
  CHECK(nth(v, 8).pieces()[0].ball.center().coords()[0] == 0);
}

TEST_CASE("normalized form reproduces every member of the original family") {
  testutil::TestRng rng(59);
  for (const Ring& r : {Ring::rational_ring(), Ring::gaussian_ring(),
                        Ring::intmod_ring(BigInt(7))}) {
    for (int trial = 0; trial < 60; ++trial) {
      FamilyPtr f = random_family(rng, kLine, r, rng.range(1, 3));
      NormalFamily nf = normalize_family(f);
      for (std::int64_t k = 1; k <= 20; ++k) {
        CHECK(nf_nth(nf, k) == nth(f, k));
      }
    }
  }
}

TEST_CASE("tree evaluation of a member agrees with the materialized member") {
  testutil::TestRng rng(61);
  for (const Ring& r : {Ring::rational_ring(), Ring::gaussian_ring(),
                        Ring::intmod_ring(BigInt(7))}) {
    for (int trial = 0; trial < 40; ++trial) {
      FamilyPtr f = random_family(rng, kLine, r, rng.range(0, 2));
      for (std::int64_t k = 1; k <= 10; ++k) {
        StepFunction fk = nth(f, k);
        std::vector<Point> probes = testutil::probe_points(rng, fk, fk, 4);
        for (const Point& x : probes) {
          CHECK(member_value(f, k, x) == evaluate(fk, x));
        }
      }
    }
  }
  CHECK_THROWS_AS((void)member_value(random_family(rng, kLine, kQ, 0), 0,
                                     pt(Rational(0))),
                  Error);
}

TEST_CASE("normalized form of discrete families uses the constant tail") {
  Space d = Space::discrete({"a", "b"});
  Ring r = Ring::rational_ring();
  StepFunction f = char_fn(Ball(d, Point::discrete("a"), 1),
                           RingElem::rational(Rational(4)));
  StepFunction g = char_fn(Ball(d, Point::discrete("b"), 1),
                           RingElem::rational(Rational(1)));
  FamilyPtr fam = SequenceFamily::explicit_then(
      {g}, SequenceFamily::sum(SequenceFamily::constant(f),
                               SequenceFamily::constant(g)));
  NormalFamily nf = normalize_family(fam);
  REQUIRE(nf.const_tail().has_value());
  CHECK(*nf.const_tail() == add(f, g));
  for (std::int64_t k = 1; k <= 6; ++k) CHECK(nf_nth(nf, k) == nth(fam, k));
}

TEST_CASE("eventual ball relations match concrete ball relations") {
  testutil::TestRng rng(61);
  Prime p = kLine.prime();
  for (int trial = 0; trial < 120; ++trial) {
    auto draw = [&] {
      PointFamily::CoordMonomial c{
          rng.flip() ? Rational(0) : testutil::unit_times_power(rng, p, rng.range(-2, 2)),
          rng.flip() ? IntegerMap::constant(0) : random_map(rng, 1, 2)};
      return BallMap{{c}, random_map(rng, -1, 2)};
    };
    BallMap a = draw();
    BallMap b = draw();
    EventualRel rel = ballmap_relation(p, a, b);
    for (std::int64_t k = rel.from; k <= rel.from + 25; ++k) {
      CHECK(ball_relation(ball_at(kLine, a, k), ball_at(kLine, b, k)) ==
            rel.rel);
    }
  }
}
