#include <doctest.h>

#include <vector>

#include "egorov/step_function.hpp"
#include "test_util.hpp"

using namespace egorov;

namespace {

const Space kLine = Space::qp(Prime(5), 1);
const Ring kQ = Ring::rational_ring();

Point pt(Rational q) { return Point::qp({std::move(q)}); }

void check_canonical(const StepFunction& f) {
  const auto& ps = f.pieces();
  for (const auto& piece : ps) CHECK(!piece.value.is_zero());
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      CHECK(ball_relation(ps[i].ball, ps[j].ball) == BallRel::disjoint);
  for (std::size_t i = 0; i + 1 < ps.size(); ++i)
    CHECK(ball_less(ps[i].ball, ps[i + 1].ball));
}

}  // namespace

TEST_CASE("characteristic functions evaluate to their value inside only") {
  Ball b(kLine, pt(Rational(2)), 1);
  StepFunction f = char_fn(b, RingElem::rational(Rational(7)));
  CHECK(evaluate(f, pt(Rational(2))) == RingElem::rational(Rational(7)));
  CHECK(evaluate(f, pt(Rational(2 + 5))) == RingElem::rational(Rational(7)));
  CHECK(evaluate(f, pt(Rational(3))) == RingElem::zero(kQ));
  CHECK(char_fn(b, RingElem::zero(kQ)).is_zero());
}

TEST_CASE("sum of a full sibling set collapses to the parent ball") {
  Ball parent(kLine, pt(Rational(0)), 0);
  StepFunction whole = StepFunction::zero(kLine, kQ);
  for (const Ball& child : split_ball(parent))
    whole = add(whole, char_fn(child, RingElem::rational(Rational(3))));
  CHECK(whole == char_fn(parent, RingElem::rational(Rational(3))));
  CHECK(whole.pieces().size() == 1);
}

TEST_CASE("nested pieces are resolved into disjoint canonical pieces") {
  Ball outer(kLine, pt(Rational(0)), 0);
  Ball inner(kLine, pt(Rational(5)), 2);
  StepFunction f = add(char_fn(outer, RingElem::rational(Rational(1))),
                       char_fn(inner, RingElem::rational(Rational(1))));
  check_canonical(f);
  CHECK(evaluate(f, pt(Rational(5))) == RingElem::rational(Rational(2)));
  CHECK(evaluate(f, pt(Rational(1))) == RingElem::rational(Rational(1)));
  CHECK(evaluate(f, pt(Rational(1, 5))) == RingElem::zero(kQ));
}

TEST_CASE("adding the negation gives the zero function") {
  testutil::TestRng rng(31);
  for (int i = 0; i < 50; ++i) {
    StepFunction f = testutil::random_step(rng, kLine, kQ, 5);
    StepFunction z = add(f, neg(f));
    CHECK(z.is_zero());
    CHECK(z == StepFunction::zero(kLine, kQ));
  }
}

TEST_CASE("extensional equality coincides with structural equality") {
  // The same function assembled in different orders and groupings.
  Ball b0(kLine, pt(Rational(0)), 1);
  Ball b1(kLine, pt(Rational(1)), 1);
  Ball b2(kLine, pt(Rational(1, 5)), -1);
  RingElem u = RingElem::rational(Rational(2, 3));
  RingElem w = RingElem::rational(Rational(-4));
  StepFunction one =
      add(add(char_fn(b0, u), char_fn(b1, w)), char_fn(b2, u));
  StepFunction two =
      add(char_fn(b2, u), add(char_fn(b1, w), char_fn(b0, u)));
  CHECK(one == two);
}

TEST_CASE("pointwise arithmetic oracle on random pairs over all rings") {
  testutil::TestRng rng(37);
  std::vector<Ring> rings = {Ring::rational_ring(), Ring::gaussian_ring(),
                             Ring::intmod_ring(BigInt(6))};
  for (std::int64_t pv : {2, 3, 5}) {
    Space line = Space::qp(Prime(pv), 1);
    for (const Ring& r : rings) {
      for (int trial = 0; trial < 30; ++trial) {
        StepFunction f = testutil::random_step(rng, line, r, 4);
        StepFunction g = testutil::random_step(rng, line, r, 4);
        StepFunction s = add(f, g);
        StepFunction m = mul(f, g);
        StepFunction n = neg(f);
        check_canonical(s);
        check_canonical(m);
        check_canonical(n);
        for (const Point& x : testutil::probe_points(rng, f, g, 10)) {
          RingElem fx = evaluate(f, x);
          RingElem gx = evaluate(g, x);
          CHECK(evaluate(s, x) == ring_add(fx, gx));
          CHECK(evaluate(m, x) == ring_mul(fx, gx));
          CHECK(evaluate(n, x) == ring_neg(fx));
        }
      }
    }
  }
}

TEST_CASE("ring algebra identities hold structurally") {
  testutil::TestRng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    StepFunction f = testutil::random_step(rng, kLine, kQ, 4);
    StepFunction g = testutil::random_step(rng, kLine, kQ, 4);
    StepFunction h = testutil::random_step(rng, kLine, kQ, 4);
    CHECK(add(f, g) == add(g, f));
    CHECK(mul(f, g) == mul(g, f));
    CHECK(add(add(f, g), h) == add(f, add(g, h)));
    CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
    CHECK(mul(f, add(g, h)) == add(mul(f, g), mul(f, h)));
  }
}

TEST_CASE("restriction keeps exactly the part inside the window") {
  Ball window(kLine, pt(Rational(0)), 0);
  Ball in(kLine, pt(Rational(5)), 1);
  Ball out(kLine, pt(Rational(1, 5)), 1);
  StepFunction f = add(char_fn(in, RingElem::rational(Rational(2))),
                       char_fn(out, RingElem::rational(Rational(3))));
  StepFunction g = restrict_to(f, window);
  CHECK(g == char_fn(in, RingElem::rational(Rational(2))));
  CHECK(restrict_to(g, window) == g);

  // A piece strictly containing the window is clipped to the window.
  StepFunction wide = char_fn(Ball(kLine, pt(Rational(0)), -2),
                              RingElem::rational(Rational(9)));
  StepFunction clipped = restrict_to(wide, window);
  CHECK(clipped == char_fn(window, RingElem::rational(Rational(9))));
}

TEST_CASE("restriction agrees with the indicator product pointwise") {
  testutil::TestRng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    StepFunction f = testutil::random_step(rng, kLine, kQ, 4);
    Ball window = testutil::random_ball(rng, kLine, -3, 3);
    StepFunction g = restrict_to(f, window);
    StepFunction ind = char_fn(window, RingElem::one(kQ));
    CHECK(g == mul(f, ind));
  }
}

TEST_CASE("constancy exponent is the smallest locally-constant radius") {
  StepFunction z = StepFunction::zero(kLine, kQ);
  CHECK(constancy_exponent(z, pt(Rational(0))) == Constancy::everywhere());

  Ball b(kLine, pt(Rational(0)), 2);
  StepFunction f = char_fn(b, RingElem::rational(Rational(1)));
  // Inside the piece: constant on the piece itself but not on any larger ball.
  Constancy inside = constancy_exponent(f, pt(Rational(0)));
  CHECK(inside == Constancy::at(2));
  // Outside: constant zero on a ball that avoids the support.
  Constancy outside = constancy_exponent(f, pt(Rational(1)));
  CHECK(!outside.everywhere_constant);
  // Decisive oracle: g is constant on a ball B with value v exactly when
  // restrict_to(g, B) is the v-indicator of B (or zero for v = 0).
  auto constant_on = [](const StepFunction& g, const Ball& b) {
    RingElem v = evaluate(g, b.center());
    StepFunction r = restrict_to(g, b);
    return v.is_zero() ? r.is_zero() : r == char_fn(b, v);
  };
  testutil::TestRng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    StepFunction g = testutil::random_step(rng, kLine, kQ, 4);
    Point x = testutil::random_point(rng, kLine, -4, 4);
    Constancy c = constancy_exponent(g, x);
    if (c.everywhere_constant) {
      CHECK(g.is_zero());
      continue;
    }
    CHECK(constant_on(g, Ball(kLine, x, c.gamma)));
    CHECK(!constant_on(g, Ball(kLine, x, c.gamma - 1)));
  }
}

TEST_CASE("mixed rings and mixed spaces are rejected") {
  StepFunction f = char_fn(Ball(kLine, pt(Rational(0)), 0),
                           RingElem::rational(Rational(1)));
  StepFunction g = char_fn(Ball(kLine, pt(Rational(0)), 0),
                           RingElem::intmod(BigInt(1), BigInt(6)));
  CHECK_THROWS_AS(add(f, g), Error);
  Space other = Space::qp(Prime(7), 1);
  StepFunction h = char_fn(Ball(other, pt(Rational(0)), 0),
                           RingElem::rational(Rational(1)));
  CHECK_THROWS_AS(add(f, h), Error);
}

TEST_CASE("discrete step functions behave as finite tables") {
  Space d = Space::discrete({"a", "b", "c"});
  Ring r6 = Ring::intmod_ring(BigInt(6));
  StepFunction f = add(char_fn(Ball(d, Point::discrete("a"), 1),
                               RingElem::intmod(BigInt(2), BigInt(6))),
                       char_fn(Ball(d, Point::discrete("b"), 1),
                               RingElem::intmod(BigInt(3), BigInt(6))));
  CHECK(evaluate(f, Point::discrete("a")) ==
        RingElem::intmod(BigInt(2), BigInt(6)));
  CHECK(evaluate(f, Point::discrete("c")) == RingElem::zero(r6));
  // 2+4 = 0 mod 6: the piece disappears.
  StepFunction g = add(f, char_fn(Ball(d, Point::discrete("a"), 1),
                                  RingElem::intmod(BigInt(4), BigInt(6))));
  CHECK(evaluate(g, Point::discrete("a")) == RingElem::zero(r6));
  // Equal values on every singleton collapse to the whole-space ball.
  StepFunction u = StepFunction::zero(d, r6);
  for (const char* l : {"a", "b", "c"})
    u = add(u, char_fn(Ball(d, Point::discrete(l), 1),
                       RingElem::intmod(BigInt(5), BigInt(6))));
  REQUIRE(u.pieces().size() == 1);
  CHECK(u.pieces()[0].ball.gamma() == 0);
}
