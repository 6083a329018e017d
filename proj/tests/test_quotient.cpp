#include <doctest.h>

#include <vector>

#include "egorov/quotient.hpp"
#include "test_util.hpp"

using namespace egorov;

namespace {

const Prime kP(5);
const Ring kQ = Ring::rational_ring();
const Space kLine = Space::qp(kP, 1);

Point pt(Rational q) { return Point::qp({std::move(q)}); }

RingElem q(std::int64_t num, std::int64_t den = 1) {
  return RingElem::rational(Rational(num, den));
}

// k -> coeff_unit * p^{coeff_exp(k)} on Ball(center * p^{center_exp(k)}, radius(k)).
FamilyPtr pulse(RingElem coeff_unit, IntegerMap coeff_exp, Rational center,
                IntegerMap center_exp, IntegerMap radius) {
  return SequenceFamily::monomial_indicator(
      kLine, kQ, std::move(coeff_unit), std::move(coeff_exp),
      pt(std::move(center)), std::move(center_exp), std::move(radius));
}

// Unit pulse at p^k with radius exponent 2k+1.
FamilyPtr sliding_unit_pulse() {
  return pulse(q(1), IntegerMap::constant(0), Rational(1),
               IntegerMap::affine(1, 0), IntegerMap::affine(2, 1));
}

// p^k times the indicator of Ball(0, radius(k)).
FamilyPtr origin_spike(IntegerMap radius) {
  return pulse(q(1), IntegerMap::affine(1, 0), Rational(0),
               IntegerMap::constant(0), std::move(radius));
}

const Ball kUnitBall(kLine, pt(Rational(0)), 0);

}  // namespace

TEST_CASE("a spike misses a window disjoint from its support") {
  FamilyPtr delta = origin_spike(IntegerMap::affine(1, 0));
  Ball window(kLine, pt(Rational(1)), 1);
  Verdict v = is_negligible_on(delta, window);
  REQUIRE(v.is_proved());
  CHECK(v.n() == 1);
  CHECK(v.certificate().kind == "restriction-vanishes");
  REQUIRE(v.certificate().ball.has_value());
  CHECK(*v.certificate().ball == window);
  for (std::int64_t k = 1; k <= 40; ++k) {
    CHECK(restrict_to(nth(delta, k), window).is_zero());
  }
  // On a window meeting the support it is a genuine nonzero class.
  CHECK(is_negligible_on(delta, kUnitBall).is_refuted());
  CHECK(is_negligible_global(delta).is_refuted());
}

TEST_CASE("sliding unit pulses are not negligible on the unit ball") {
  FamilyPtr f = sliding_unit_pulse();
  Verdict v = is_negligible_on(f, kUnitBall);
  REQUIRE(v.is_refuted());
  const Schedule& sch = v.schedule();
  REQUIRE(sch.points.has_value());
  std::int64_t prev = 0;
  for (std::int64_t j = 1; j <= 50; ++j) {
    const std::int64_t k = sch.indices(j);
    CHECK(k > prev);
    prev = k;
    Point x = sch.points->at(j);
    CHECK(in_ball(x, kUnitBall));
    CHECK(evaluate(nth(f, k), x) == q(1));
  }
  CHECK(is_negligible_global(f).is_refuted());

  // Doubling the pulse doubles the witnessed values; still refuted.
  FamilyPtr twice = SequenceFamily::sum(f, f);
  Verdict w = is_negligible_on(twice, kUnitBall);
  REQUIRE(w.is_refuted());
  for (std::int64_t j = 1; j <= 30; ++j) {
    CHECK(evaluate(nth(twice, w.schedule().indices(j)),
                   w.schedule().points->at(j)) == q(2));
  }
}

TEST_CASE("every representative equals itself") {
  for (const FamilyPtr& f :
       {sliding_unit_pulse(), origin_spike(IntegerMap::affine(1, 0))}) {
    GeneralizedFunction u(f);
    Verdict v = gf_equal(u, u);
    REQUIRE(v.is_proved());
    CHECK(v.n() == 1);
  }
}

TEST_CASE("changing finitely many members does not change the class") {
  FamilyPtr f = sliding_unit_pulse();
  std::vector<StepFunction> junk = {
      char_fn(Ball(kLine, pt(Rational(2)), 3), q(9)),
      StepFunction::zero(kLine, kQ),
      char_fn(kUnitBall, q(1, 7))};
  FamilyPtr g = SequenceFamily::explicit_then(junk, f);
  Verdict v = gf_equal(GeneralizedFunction(f), GeneralizedFunction(g));
  REQUIRE(v.is_proved());
  FamilyPtr diff = SequenceFamily::sum(f, SequenceFamily::neg(g));
  for (std::int64_t k = v.n(); k <= v.n() + 40; ++k) {
    CHECK(nth(diff, k).is_zero());
  }
}

TEST_CASE("two spikes whose radii differ by one are distinct classes") {
  FamilyPtr narrow = origin_spike(IntegerMap::affine(1, 1));
  FamilyPtr wide = origin_spike(IntegerMap::affine(1, 0));
  Verdict v =
      gf_equal(GeneralizedFunction(wide), GeneralizedFunction(narrow));
  REQUIRE(v.is_refuted());
  REQUIRE(v.schedule().points.has_value());
  FamilyPtr diff = SequenceFamily::sum(wide, SequenceFamily::neg(narrow));
  for (std::int64_t j = 1; j <= 30; ++j) {
    const std::int64_t k = v.schedule().indices(j);
    Point x = v.schedule().points->at(j);
    // The gap between the two supports carries exactly p^k.
    CHECK(evaluate(nth(diff, k), x) == RingElem::rational(pow_p(kP, k)));
  }
}

TEST_CASE("supports escaping every ball are negligible everywhere") {
  // Indicator of Ball(p^-k, 2k): the center runs away, the radius shrinks.
  FamilyPtr f = pulse(q(1), IntegerMap::constant(0), Rational(1),
                      IntegerMap::affine(-1, 0), IntegerMap::affine(2, 0));
  Verdict global = is_negligible_global(f);
  REQUIRE(global.is_proved());
  CHECK(global.certificate().kind == "vanishes-on-every-ball");
  CHECK(!global.certificate().ball.has_value());

  Verdict on_unit = is_negligible_on(f, kUnitBall);
  REQUIRE(on_unit.is_proved());
  for (std::int64_t k = on_unit.n(); k <= on_unit.n() + 40; ++k) {
    CHECK(restrict_to(nth(f, k), kUnitBall).is_zero());
  }
  // Soundness of the global claim on a few fixed balls.
  for (std::int64_t m : {0, 1, 3}) {
    Ball bm(kLine, pt(Rational(0)), -m);
    Verdict vm = is_negligible_on(f, bm);
    REQUIRE(vm.is_proved());
    for (std::int64_t k = vm.n(); k <= vm.n() + 30; ++k) {
      CHECK(restrict_to(nth(f, k), bm).is_zero());
    }
  }
}

TEST_CASE("a growing ball around an escaping center keeps the origin") {
  // Ball(p^-k, -2k) contains 0 for every k: the family is a fixed nonzero
  // value on a huge region, hence refuted despite the escaping center.
  FamilyPtr f = pulse(q(1), IntegerMap::constant(0), Rational(1),
                      IntegerMap::affine(-1, 0), IntegerMap::affine(-2, 0));
  Verdict v = is_negligible_on(f, kUnitBall);
  REQUIRE(v.is_refuted());
  REQUIRE(v.schedule().points.has_value());
  for (std::int64_t j = 1; j <= 30; ++j) {
    Point x = v.schedule().points->at(j);
    CHECK(in_ball(x, kUnitBall));
    CHECK(evaluate(nth(f, v.schedule().indices(j)), x) == q(1));
  }
  Verdict g = is_negligible_global(f);
  REQUIRE(g.is_refuted());
  REQUIRE(g.schedule().points.has_value());
  CHECK(is_compactly_supported(*g.schedule().points).is_proved());
}

TEST_CASE("undecidable modular coefficients surface as unknown") {
  Ring r6 = Ring::intmod_ring(BigInt(6));
  RingElem one6 = RingElem::intmod(BigInt(1), BigInt(6));
  auto term = [&](IntegerMap exp) {
    return SequenceFamily::monomial_indicator(
        kLine, r6, one6, std::move(exp), pt(Rational(0)),
        IntegerMap::constant(0), IntegerMap::constant(0));
  };
  FamilyPtr f = SequenceFamily::sum(term(IntegerMap::affine(1, 0)),
                                    term(IntegerMap::affine(2, 0)));
  Verdict v = is_negligible_on(f, kUnitBall, 42);
  REQUIRE(v.is_unknown());
  CHECK(v.checked_up_to() == 42);
  Verdict g = is_negligible_global(f, 91);
  REQUIRE(g.is_unknown());
  CHECK(g.checked_up_to() == 91);
}

TEST_CASE("point values of the sliding pulse vanish with exact thresholds") {
  FamilyPtr f = sliding_unit_pulse();
  // At x = p^3 only the third member is nonzero.
  ScalarFamily at8 = point_value(f, pt(Rational(125)));
  CHECK(at8.at(1) == q(0));
  CHECK(at8.at(2) == q(0));
  CHECK(at8.at(3) == q(1));
  Verdict v = scalar_is_zero(at8);
  REQUIRE(v.is_proved());
  CHECK(v.n() == 4);

  // At zero and at a point outside every support the values vanish at once.
  Verdict at0 = scalar_is_zero(point_value(f, pt(Rational(0))));
  REQUIRE(at0.is_proved());
  CHECK(at0.n() == 1);
  Verdict far = scalar_is_zero(point_value(f, pt(Rational(3))));
  REQUIRE(far.is_proved());
  CHECK(far.n() == 1);
}

TEST_CASE("point values of a spike at its center never die") {
  FamilyPtr delta = origin_spike(IntegerMap::affine(1, 0));
  ScalarFamily at0 = point_value(delta, pt(Rational(0)));
  auto* mt = std::get_if<ScalarFamily::MonomialTail>(&at0.tail());
  REQUIRE(mt != nullptr);
  CHECK(mt->unit == q(1));
  CHECK(mt->exp == IntegerMap::affine(1, 0));
  CHECK(scalar_is_zero(at0).is_refuted());

  // At |x| = p^-m the spike covers x for k <= m only: threshold m + 1.
  for (std::int64_t m : {0, 1, 4}) {
    ScalarFamily s = point_value(delta, pt(pow_p(kP, m)));
    Verdict v = scalar_is_zero(s);
    REQUIRE(v.is_proved());
    CHECK(v.n() == m + 1);
    for (std::int64_t k = 1; k <= m; ++k) {
      CHECK(s.at(k) == RingElem::rational(pow_p(kP, k)));
    }
  }
  // Outside the unit ball the spike never reaches x.
  Verdict out = scalar_is_zero(point_value(delta, pt(Rational(1, 5))));
  REQUIRE(out.is_proved());
  CHECK(out.n() == 1);
}

TEST_CASE("evaluation along generalized points separates what points miss") {
  FamilyPtr delta = origin_spike(IntegerMap::affine(1, 0));
  FamilyPtr deformed = origin_spike(IntegerMap::affine(1, 1));
  PointFamily x0 = PointFamily::make(
      kLine, {},
      PointFamily::MonomialPoint{{{Rational(1), IntegerMap::affine(1, 0)}}});

  ScalarFamily lhs = eval_at_gpoint(deformed, x0);
  CHECK(std::holds_alternative<ScalarFamily::ZeroTail>(lhs.tail()));
  CHECK(scalar_is_zero(lhs).is_proved());

  ScalarFamily rhs = eval_at_gpoint(delta, x0);
  auto* mt = std::get_if<ScalarFamily::MonomialTail>(&rhs.tail());
  REQUIRE(mt != nullptr);
  CHECK(mt->exp == IntegerMap::affine(1, 0));
  CHECK(scalar_is_zero(rhs).is_refuted());

  // A family of points with unbounded norm is rejected.
  PointFamily runaway = PointFamily::make(
      kLine, {},
      PointFamily::MonomialPoint{{{Rational(1), IntegerMap::affine(-1, 0)}}});
  CHECK_THROWS_AS(eval_at_gpoint(delta, runaway), Error);
  try {
    eval_at_gpoint(delta, runaway);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_compactly_supported);
  }

  // Space mismatch is rejected before any analysis.
  PointFamily other = PointFamily::make(
      Space::qp(Prime(7), 1), {},
      PointFamily::ConstantPoint{Point::qp({Rational(0)})});
  CHECK_THROWS_AS(eval_at_gpoint(delta, other), Error);
}

TEST_CASE("a prefix of explicit points is evaluated exactly") {
  FamilyPtr delta = origin_spike(IntegerMap::affine(1, 0));
  PointFamily x = PointFamily::make(
      kLine, {pt(Rational(0)), pt(Rational(1, 5))},
      PointFamily::ConstantPoint{pt(Rational(0))});
  ScalarFamily s = eval_at_gpoint(delta, x);
  CHECK(s.at(1) == q(5));   // at the center
  CHECK(s.at(2) == q(0));   // outside the support
  CHECK(s.at(3) == q(125));
  CHECK(scalar_is_zero(s).is_refuted());
}

TEST_CASE("refutations convert into generalized points that refute values") {
  FamilyPtr f = sliding_unit_pulse();
  Verdict v = is_negligible_on(f, kUnitBall);
  REQUIRE(v.is_refuted());
  PointFamily g = refutation_to_gpoint(f, v);
  CHECK(is_compactly_supported(g).is_proved());
  ScalarFamily values = eval_at_gpoint(f, g);
  CHECK(scalar_is_zero(values).is_refuted());

  // Same round trip when the schedule starts past a zero prefix.
  std::vector<StepFunction> zeros(3, StepFunction::zero(kLine, kQ));
  FamilyPtr shifted = SequenceFamily::explicit_then(zeros, f);
  Verdict w = is_negligible_on(shifted, kUnitBall);
  REQUIRE(w.is_refuted());
  CHECK(w.schedule().indices(1) >= 4);
  PointFamily h = refutation_to_gpoint(shifted, w);
  CHECK(h.prefix().size() >= 3);
  ScalarFamily shifted_values = eval_at_gpoint(shifted, h);
  CHECK(scalar_is_zero(shifted_values).is_refuted());
}

TEST_CASE("ill-formed certificates are rejected with the right error") {
  FamilyPtr f = sliding_unit_pulse();
  auto code_of = [](auto&& call) {
    try {
      call();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::not_supported;
  };

  // A proof is not a refutation.
  Verdict proved = is_negligible_on(f, Ball(kLine, pt(Rational(1)), 1));
  REQUIRE(proved.is_proved());
  CHECK(code_of([&] { refutation_to_gpoint(f, proved); }) ==
        Errc::malformed_certificate);

  // A schedule without witness points cannot be converted.
  Verdict bare = Verdict::refuted(Schedule{IntegerMap::affine(1, 0), {}});
  CHECK(code_of([&] { refutation_to_gpoint(f, bare); }) ==
        Errc::malformed_certificate);

  // Witness points from another space.
  Verdict vr = is_negligible_on(f, kUnitBall);
  PointFamily foreign = PointFamily::make(
      Space::qp(Prime(7), 1), {},
      PointFamily::ConstantPoint{Point::qp({Rational(0)})});
  Verdict wrong_space =
      Verdict::refuted(Schedule{vr.schedule().indices, foreign});
  CHECK(code_of([&] { refutation_to_gpoint(f, wrong_space); }) ==
        Errc::malformed_certificate);

  // Indices that skip (slope 2) do not name a contiguous tail.
  Verdict skipping = Verdict::refuted(
      Schedule{IntegerMap::affine(2, 0), vr.schedule().points});
  CHECK(code_of([&] { refutation_to_gpoint(f, skipping); }) ==
        Errc::malformed_certificate);

  // Points that fail to witness nonzero values.
  Verdict lying = Verdict::refuted(Schedule{
      IntegerMap::affine(1, 0),
      PointFamily::make(kLine, {},
                        PointFamily::ConstantPoint{pt(Rational(3))})});
  CHECK(code_of([&] { refutation_to_gpoint(f, lying); }) ==
        Errc::malformed_certificate);
}

TEST_CASE("class arithmetic requires matching spaces and rings") {
  CHECK_THROWS_AS(GeneralizedFunction(nullptr), Error);
  FamilyPtr f = sliding_unit_pulse();
  FamilyPtr other_space = SequenceFamily::monomial_indicator(
      Space::qp(Prime(7), 1), kQ, q(1), IntegerMap::constant(0),
      Point::qp({Rational(1)}), IntegerMap::affine(1, 0),
      IntegerMap::affine(2, 1));
  CHECK_THROWS_AS(
      gf_equal(GeneralizedFunction(f), GeneralizedFunction(other_space)),
      Error);
  Ring r6 = Ring::intmod_ring(BigInt(6));
  FamilyPtr other_ring = SequenceFamily::monomial_indicator(
      kLine, r6, RingElem::intmod(BigInt(1), BigInt(6)),
      IntegerMap::constant(0), pt(Rational(0)), IntegerMap::constant(0),
      IntegerMap::constant(0));
  CHECK_THROWS_AS(
      gf_equal(GeneralizedFunction(f), GeneralizedFunction(other_ring)),
      Error);
}

TEST_CASE("discrete spaces reduce negligibility to finitely many points") {
  Space d = Space::discrete({"a", "b"});
  Ring r = Ring::rational_ring();
  StepFunction live = char_fn(Ball(d, Point::discrete("a"), 1), q(3));
  StepFunction junk = char_fn(Ball(d, Point::discrete("b"), 1), q(8));

  // Eventually zero at every label.
  FamilyPtr dies = SequenceFamily::explicit_then(
      {junk, live}, SequenceFamily::constant(StepFunction::zero(d, r)));
  Verdict v = is_negligible_global(dies);
  REQUIRE(v.is_proved());
  CHECK(v.n() == 3);
  CHECK(scalar_is_zero(point_value(dies, Point::discrete("a"))).is_proved());
  CHECK(scalar_is_zero(point_value(dies, Point::discrete("b"))).is_proved());

  // Forever nonzero at "a" only: refuted globally and on the singleton at
  // "a", proved on the singleton at "b".
  FamilyPtr stays = SequenceFamily::explicit_then(
      {junk}, SequenceFamily::constant(live));
  Verdict w = is_negligible_global(stays);
  REQUIRE(w.is_refuted());
  REQUIRE(w.schedule().points.has_value());
  for (std::int64_t j = 1; j <= 10; ++j) {
    CHECK(!evaluate(nth(stays, w.schedule().indices(j)),
                    w.schedule().points->at(j))
               .is_zero());
  }
  CHECK(is_negligible_on(stays, Ball(d, Point::discrete("a"), 1)).is_refuted());
  Verdict on_b = is_negligible_on(stays, Ball(d, Point::discrete("b"), 1));
  REQUIRE(on_b.is_proved());
  CHECK(on_b.n() == 2);  // the junk prefix touched "b"

  // Point values at the labels match the members exactly.
  ScalarFamily at_a = point_value(stays, Point::discrete("a"));
  CHECK(at_a.at(1) == q(0));
  CHECK(at_a.at(2) == q(3));
  CHECK(scalar_is_zero(at_a).is_refuted());

  // Discrete equality via the same machinery.
  Verdict eq = gf_equal(GeneralizedFunction(stays),
                        GeneralizedFunction(SequenceFamily::constant(live)));
  REQUIRE(eq.is_proved());
  CHECK(eq.n() == 2);
}

TEST_CASE("products of eventually disjoint supports are negligible") {
  // Supports Ball(p^k, 2k+1) and Ball(2, k) are disjoint for every k >= 1
  // (their centers sit at distance one), so the product is identically zero.
  FamilyPtr f = sliding_unit_pulse();
  FamilyPtr g = pulse(q(1), IntegerMap::affine(1, 0), Rational(2),
                      IntegerMap::constant(0), IntegerMap::affine(1, 0));
  FamilyPtr prod = SequenceFamily::prod(f, g);
  Verdict v = is_negligible_global(prod);
  REQUIRE(v.is_proved());
  for (std::int64_t k = 1; k <= 30; ++k) {
    CHECK(nth(prod, k).is_zero());
  }
  Verdict on_unit = is_negligible_on(prod, kUnitBall);
  REQUIRE(on_unit.is_proved());
  CHECK(on_unit.n() == 1);
}

TEST_CASE("products of nested supports multiply coefficients") {
  // (p^k on Ball(0,k)) * (p^k on Ball(0,k+1)) = p^2k on Ball(0,k+1).
  FamilyPtr wide = origin_spike(IntegerMap::affine(1, 0));
  FamilyPtr narrow = origin_spike(IntegerMap::affine(1, 1));
  FamilyPtr prod = SequenceFamily::prod(wide, narrow);
  ScalarFamily at0 = point_value(prod, pt(Rational(0)));
  auto* mt = std::get_if<ScalarFamily::MonomialTail>(&at0.tail());
  REQUIRE(mt != nullptr);
  CHECK(mt->exp == IntegerMap::affine(2, 0));
  CHECK(is_negligible_on(prod, kUnitBall).is_refuted());
}
