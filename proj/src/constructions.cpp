#include "egorov/constructions.hpp"

#include <limits>
#include <random>
#include <utility>

#include "egorov/errors.hpp"

namespace egorov {

namespace {

Space line(const Prime& p) { return Space::qp(p, 1); }

// Deterministic sampler with a portable rejection step, so replaying a seed
// reproduces reports byte for byte.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = cap - cap % n;
    std::uint64_t v = eng_();
    while (v >= limit) {
      v = eng_();
    }
    return v % n;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // A rational with valuation exactly v at p.
  Rational unit_rational(const Prime& p, std::int64_t v) {
    auto digit = [&] {
      std::int64_t d = range(1, 9);
      while (d % p.value() == 0) {
        d = range(1, 9);
      }
      return d;
    };
    Rational u(digit(), digit());
    if (below(2) == 1) {
      u = -u;
    }
    return u * pow_p(p, v);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

FamilyPtr counterexample_family(const Prime& p) {
  Space s = line(p);
  return SequenceFamily::monomial_indicator(
      s, Ring::rational_ring(), RingElem::rational(1), IntegerMap::constant(0),
      Point::qp({Rational(1)}), IntegerMap::affine(1, 0),
      IntegerMap::affine(2, 1));
}

FamilyPtr stripped_ball_family(const Space& s, const Point& x,
                               const std::vector<Point>& xs,
                               const RingElem& theta) {
  if (theta.is_zero()) {
    fail(Errc::precondition_violated, "theta must be nonzero");
  }
  if (xs.empty()) {
    fail(Errc::precondition_violated, "needs at least one sample point");
  }
  require_in_space(s, x);
  for (const auto& xi : xs) {
    require_in_space(s, xi);
    if (xi == x) {
      fail(Errc::precondition_violated,
           "sample points must differ from the limit point");
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) {
        fail(Errc::precondition_violated, "sample points must be distinct");
      }
    }
  }
  std::vector<std::int64_t> w;
  w.reserve(xs.size());
  for (const auto& xi : xs) {
    w.push_back(distance_exp(s, x, xi).value());
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] >= w[i + 1]) {
      fail(Errc::precondition_violated,
           "distances to the limit point must strictly decrease");
    }
  }

  if (!s.is_qp()) {
    fail(Errc::not_representable,
         "no exponent structure on a discrete space");
  }
  if (xs.size() < 2) {
    fail(Errc::not_representable, "too few points to infer the exponent law");
  }
  const Prime& p = s.prime();

  // The points must scale uniformly: x_k = c * p^(a*k).
  const auto& first = xs[0].coords();
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (const auto& xi : xs) {
      if ((xi.coords()[i] == 0) != (first[i] == 0)) {
        fail(Errc::not_representable,
             "zero pattern of the coordinates is not constant");
      }
    }
  }
  std::size_t i0 = 0;
  while (i0 < first.size() && first[i0] == 0) {
    ++i0;
  }
  std::int64_t a = valuation(p, xs[1].coords()[i0]).value() -
                   valuation(p, first[i0]).value();
  if (a < 1) {
    fail(Errc::not_representable,
         "the exponent law must contract with slope at least one");
  }
  std::vector<Rational> base;
  base.reserve(first.size());
  for (const auto& c : first) {
    base.push_back(c * pow_p(p, -a));
  }
  for (std::size_t n = 0; n < xs.size(); ++n) {
    Rational scale = pow_p(p, a * static_cast<std::int64_t>(n + 1));
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (xs[n].coords()[i] != base[i] * scale) {
        fail(Errc::not_representable,
             "points do not follow a monomial exponent law");
      }
    }
  }

  std::int64_t alpha = w.size() > 1 ? w[1] - w[0] : a;
  std::int64_t beta = w[0] - alpha;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] != alpha * static_cast<std::int64_t>(n + 1) + beta) {
      fail(Errc::not_representable,
           "distance exponents do not follow an affine law");
    }
  }

  return SequenceFamily::monomial_indicator(
      s, theta.ring(), theta, IntegerMap::constant(0),
      Point::qp(std::move(base)), IntegerMap::affine(a, 0),
      IntegerMap::affine(alpha, beta + 1));
}

FamilyPtr delta_embedding(const Prime& p) {
  Space s = line(p);
  return SequenceFamily::monomial_indicator(
      s, Ring::rational_ring(), RingElem::rational(1), IntegerMap::affine(1, 0),
      Point::qp({Rational(0)}), IntegerMap::constant(0),
      IntegerMap::affine(1, 0));
}

FamilyPtr phi_delta(const Prime& p, const IntegerMap& phi) {
  PhiReport report = validate_phi(phi);
  if (!report.ok()) {
    fail(Errc::invalid_phi, report.describe());
  }
  Space s = line(p);
  return SequenceFamily::monomial_indicator(
      s, Ring::rational_ring(), RingElem::rational(1), IntegerMap::affine(1, 0),
      Point::qp({Rational(0)}), IntegerMap::constant(0), phi);
}

PointFamily witness_x0(const Prime& p) {
  return PointFamily::make(
      line(p), {},
      PointFamily::MonomialPoint{{{Rational(1), IntegerMap::affine(1, 0)}}});
}

SeparationReport separation_report(const Prime& p, const IntegerMap& phi,
                                   std::int64_t samples, std::uint64_t seed) {
  PhiReport report = validate_phi(phi);
  if (!report.ok()) {
    fail(Errc::invalid_phi, report.describe());
  }
  FamilyPtr f = phi_delta(p, phi);
  FamilyPtr d = delta_embedding(p);
  Space s = line(p);
  Sampler rng(seed);

  const std::int64_t lo = -5;
  const std::int64_t hi =
      std::max(lo, 3 * static_cast<std::int64_t>(phi.table_size()));
  const std::int64_t span = hi - lo + 1;

  std::vector<SeparationReport::StandardRecord> standard;
  std::int64_t disagreements = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rational val =
        i == 0 ? Rational(0) : rng.unit_rational(p, lo + ((i - 1) % span));
    Point xp = Point::qp({std::move(val)});
    Verdict agree = scalar_equal(point_value(f, xp), point_value(d, xp));
    if (agree.is_refuted()) {
      ++disagreements;
    }
    standard.push_back({std::move(xp), std::move(agree)});
  }

  std::vector<SeparationReport::GeneralizedRecord> generalized;
  PointFamily x0 = witness_x0(p);
  ScalarFamily l0 = eval_at_gpoint(f, x0);
  ScalarFamily r0 = eval_at_gpoint(d, x0);
  Verdict e0 = scalar_equal(l0, r0);
  generalized.push_back({x0, std::move(l0), std::move(r0), std::move(e0)});

  PointFamily outside = PointFamily::make(
      s, {}, PointFamily::ConstantPoint{Point::qp({pow_p(p, -1)})});
  ScalarFamily l1 = eval_at_gpoint(f, outside);
  ScalarFamily r1 = eval_at_gpoint(d, outside);
  bool both_vanish =
      scalar_is_zero(l1).is_proved() && scalar_is_zero(r1).is_proved();
  Verdict e1 = scalar_equal(l1, r1);
  generalized.push_back(
      {std::move(outside), std::move(l1), std::move(r1), std::move(e1)});

  bool separated = disagreements == 0;
  bool any_refuted = false;
  for (const auto& rec : generalized) {
    if (rec.equal.is_refuted()) {
      any_refuted = true;
    }
  }
  separated = separated && any_refuted;

  return SeparationReport{p,
                          phi,
                          samples,
                          seed,
                          std::move(standard),
                          std::move(generalized),
                          both_vanish,
                          disagreements,
                          separated ? "separated" : "not-separated"};
}

CounterexampleReport counterexample_report(const Prime& p,
                                           std::int64_t samples,
                                           std::uint64_t seed) {
  FamilyPtr f = counterexample_family(p);
  Space s = line(p);
  Sampler rng(seed);

  std::vector<Rational> specials;
  specials.push_back(Rational(0));
  for (std::int64_t i = 0; i <= 20; ++i) {
    specials.push_back(pow_p(p, i));
  }

  std::vector<CounterexampleReport::SampleRecord> records;
  bool all_zero = true;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rational alpha = i < static_cast<std::int64_t>(specials.size())
                         ? specials[static_cast<std::size_t>(i)]
                         : rng.unit_rational(p, rng.range(-5, 5));
    Verdict zero = scalar_is_zero(point_value(f, Point::qp({alpha})));
    if (!zero.is_proved()) {
      all_zero = false;
    }
    records.push_back({std::move(alpha), std::move(zero)});
  }

  Ball unit_ball(s, Point::qp({Rational(0)}), 0);
  Verdict on = is_negligible_on(f, unit_ball, kDefaultBound);
  bool values_unit = on.is_refuted() && on.schedule().points.has_value();
  std::int64_t checked = 0;
  if (values_unit) {
    const RingElem one = RingElem::one(f->ring());
    for (std::int64_t j = 1; j <= 50; ++j) {
      std::int64_t k = on.schedule().indices(j);
      Point xk = on.schedule().points->at(j);
      if (!(evaluate(nth(f, k), xk) == one)) {
        values_unit = false;
        break;
      }
      ++checked;
    }
  }
  Verdict global = is_negligible_global(f, kDefaultBound);

  bool conclusive =
      all_zero && on.is_refuted() && global.is_refuted() && values_unit;
  return CounterexampleReport{
      p,
      samples,
      seed,
      std::move(records),
      std::move(on),
      std::move(global),
      checked,
      values_unit,
      conclusive ? "point-values-vanish-but-family-does-not" : "inconclusive"};
}

}  // namespace egorov
