#include "egorov/quotient.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "egorov/errors.hpp"

namespace egorov {

namespace {

PowSum coord_pow_sum(const Prime& p, const PointFamily::CoordMonomial& c) {
  if (c.base == 0) {
    return PowSum::zero(p);
  }
  return PowSum::monomial(p, c.base, c.exp);
}

PointFamily::CoordMonomial affine_coord(const PointFamily::CoordMonomial& c) {
  return {c.base, IntegerMap::affine(c.exp.slope(), c.exp.offset())};
}

// ---------------------------------------------------------------------------
// Region forest: tail supports ordered by eventual containment.  The chain
// value of a node is the value the family takes, for large k, at points of
// the node's ball that lie outside all of its children.
// ---------------------------------------------------------------------------

struct RegionNode {
  BallMap ball;
  CoeffSum coeff;
  CoeffSum cv;
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
};

struct Forest {
  std::vector<RegionNode> nodes;
  std::int64_t from = 1;
};

Forest build_forest(const Prime& p, const Ring& r,
                    const std::vector<TailTerm>& terms) {
  Forest f;
  // Merge terms whose supports eventually coincide.
  std::vector<TailTerm> merged;
  for (const auto& t : terms) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (m.ball == t.ball) {
        m.coeff = cs_add(m.coeff, t.coeff);
        absorbed = true;
        break;
      }
      EventualRel rel = ballmap_relation(p, m.ball, t.ball);
      f.from = std::max(f.from, rel.from);
      if (rel.rel == BallRel::equal) {
        m.coeff = cs_add(m.coeff, t.coeff);
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      merged.push_back(t);
    }
  }

  const std::size_t n = merged.size();
  std::vector<std::vector<BallRel>> rel(n, std::vector<BallRel>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      EventualRel e = ballmap_relation(p, merged[i].ball, merged[j].ball);
      f.from = std::max(f.from, e.from);
      rel[i][j] = e.rel;
    }
  }

  f.nodes.reserve(n);
  for (auto& t : merged) {
    f.nodes.push_back({t.ball, t.coeff, CoeffSum::zero(r, p), {}, std::nullopt});
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> parent;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || rel[i][j] != BallRel::first_inside_second) {
        continue;
      }
      // Containers of one ball form a chain; pick the innermost one.
      bool innermost = true;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j || rel[i][l] != BallRel::first_inside_second) {
          continue;
        }
        if (rel[j][l] != BallRel::first_inside_second) {
          innermost = false;
          break;
        }
      }
      if (innermost) {
        parent = j;
        break;
      }
    }
    f.nodes[i].parent = parent;
    if (parent) {
      f.nodes[*parent].children.push_back(i);
    }
  }

  std::vector<char> done(n, 0);
  std::function<void(std::size_t)> fill_cv = [&](std::size_t i) {
    if (done[i]) {
      return;
    }
    if (f.nodes[i].parent) {
      fill_cv(*f.nodes[i].parent);
      f.nodes[i].cv = cs_add(f.nodes[i].coeff, f.nodes[*f.nodes[i].parent].cv);
    } else {
      f.nodes[i].cv = f.nodes[i].coeff;
    }
    done[i] = 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    fill_cv(i);
  }
  return f;
}

// Whether the part of a node's ball not covered by its children is
// eventually empty.  Children are pairwise disjoint and strictly inside the
// node, so the covered fraction is a sum of powers of p bounded by one and
// non-increasing once every radius map is affine.
struct RegionStatus {
  bool eventually_empty;
  std::int64_t from;
};

RegionStatus region_status(const Prime& p, int dim, const Forest& f,
                           std::size_t i) {
  const RegionNode& node = f.nodes[i];
  if (node.children.empty()) {
    return {false, f.from};
  }
  std::int64_t start =
      std::max(f.from, static_cast<std::int64_t>(node.ball.gamma.table_size()) + 1);
  bool shrinking = false;
  for (std::size_t ch : node.children) {
    const IntegerMap& gc = f.nodes[ch].ball.gamma;
    start = std::max(start, static_cast<std::int64_t>(gc.table_size()) + 1);
    if (gc.slope() > node.ball.gamma.slope()) {
      shrinking = true;
    }
  }
  auto covered = [&](std::int64_t k) {
    Rational sum = 0;
    for (std::size_t ch : node.children) {
      std::int64_t d = f.nodes[ch].ball.gamma(k) - node.ball.gamma(k);
      sum += pow_p(p, -static_cast<std::int64_t>(dim) * d);
    }
    return sum;
  };
  if (!shrinking) {
    return {covered(start) == 1, start};
  }
  std::int64_t k = start;
  for (std::int64_t guard = 0; guard < 1000000; ++guard) {
    if (covered(k) != 1) {
      return {false, k};
    }
    ++k;
  }
  fail(Errc::not_supported, "region coverage scan did not stabilize");
}

// ---------------------------------------------------------------------------
// Witness candidates: representable point schedules that eventually lie in a
// node's ball but outside all of its children.
// ---------------------------------------------------------------------------

std::optional<PointFamily::CoordMonomial> perturb_coord(
    const Prime& p, const PointFamily::CoordMonomial& c, std::int64_t theta,
    const IntegerMap& m) {
  if (c.base == 0) {
    return PointFamily::CoordMonomial{Rational(theta), m};
  }
  if (c.exp.slope() != m.slope()) {
    return std::nullopt;
  }
  Rational base = c.base + theta * pow_p(p, m.offset() - c.exp.offset());
  return PointFamily::CoordMonomial{std::move(base),
                                    IntegerMap::affine(c.exp.slope(), c.exp.offset())};
}

using Coords = std::vector<PointFamily::CoordMonomial>;

std::vector<Coords> make_candidates(const Prime& p, const Forest& f,
                                    std::size_t i) {
  const RegionNode& node = f.nodes[i];
  const std::size_t dim = node.ball.center.size();
  std::vector<Coords> out;

  Coords origin(dim, PointFamily::CoordMonomial{Rational(0), IntegerMap::constant(0)});
  out.push_back(origin);

  Coords center;
  center.reserve(dim);
  for (const auto& c : node.ball.center) {
    center.push_back(affine_coord(c));
  }
  out.push_back(center);

  const std::int64_t theta_max = std::max<std::int64_t>(
      1, std::min<std::int64_t>(p.value() - 1,
                                static_cast<std::int64_t>(node.children.size()) + 2));
  auto push_perturbed = [&](const Coords& base, const IntegerMap& gamma,
                            std::int64_t shift) {
    for (std::int64_t theta = 1; theta <= theta_max; ++theta) {
      IntegerMap m = IntegerMap::affine(gamma.slope(), gamma.offset() + shift);
      auto c0 = perturb_coord(p, base[0], theta, m);
      if (!c0) {
        return;
      }
      Coords cand = base;
      cand[0] = *c0;
      out.push_back(std::move(cand));
    }
  };
  for (std::size_t ch : node.children) {
    Coords cc;
    cc.reserve(dim);
    for (const auto& c : f.nodes[ch].ball.center) {
      cc.push_back(affine_coord(c));
    }
    for (std::int64_t j = 0; j <= 2; ++j) {
      push_perturbed(cc, f.nodes[ch].ball.gamma, -1 - j);
    }
  }
  for (std::int64_t j = 0; j <= 2; ++j) {
    push_perturbed(center, node.ball.gamma, j);
  }
  return out;
}

struct WitnessCheck {
  bool ok;
  std::int64_t from;
};

WitnessCheck verify_candidate(const Prime& p, const Forest& f, std::size_t i,
                              const Coords& x, bool need_compact) {
  const RegionNode& node = f.nodes[i];
  if (need_compact) {
    for (const auto& c : x) {
      if (c.base != 0 && c.exp.slope() < 0) {
        return {false, 0};
      }
    }
  }
  EventualBool inside = ballmap_contains(p, node.ball, x);
  if (!inside.value) {
    return {false, 0};
  }
  std::int64_t from = std::max(f.from, inside.from);
  for (std::size_t ch : node.children) {
    EventualBool in_child = ballmap_contains(p, f.nodes[ch].ball, x);
    if (in_child.value) {
      return {false, 0};
    }
    from = std::max(from, in_child.from);
  }
  return {true, from};
}

Point coords_at(const Space& s, const Coords& x, std::int64_t k) {
  std::vector<Rational> vals;
  vals.reserve(x.size());
  for (const auto& c : x) {
    vals.push_back(c.base == 0 ? Rational(0) : c.base * pow_p(s.prime(), c.exp(k)));
  }
  return Point::qp(std::move(vals));
}

Verdict make_refuted(const FamilyPtr& f, const Coords& x, std::int64_t from,
                     const std::optional<Ball>& k_ball) {
  const Space& s = f->space();
  std::int64_t nw = std::max<std::int64_t>(1, from);
  while (nw > 1) {
    Point pt = coords_at(s, x, nw - 1);
    if (k_ball && !in_ball(pt, *k_ball)) {
      break;
    }
    if (evaluate(nth(f, nw - 1), pt).is_zero()) {
      break;
    }
    --nw;
  }
  bool constant = true;
  for (const auto& c : x) {
    if (c.base != 0 && c.exp.slope() != 0) {
      constant = false;
    }
  }
  PointFamily points = [&] {
    if (constant) {
      return PointFamily::make(s, {},
                               PointFamily::ConstantPoint{coords_at(s, x, nw)});
    }
    Coords aligned;
    aligned.reserve(x.size());
    for (const auto& c : x) {
      aligned.push_back(
          {c.base, IntegerMap::affine(c.exp.slope(),
                                      c.exp.offset() + c.exp.slope() * (nw - 1))});
    }
    return PointFamily::make(s, {}, PointFamily::MonomialPoint{std::move(aligned)});
  }();
  return Verdict::refuted(
      Schedule{IntegerMap::affine(1, nw - 1), std::move(points)});
}

// ---------------------------------------------------------------------------
// Core decision procedure.  With a ball the question is whether the family
// restricted to it is eventually zero; without one, whether this holds on
// every fixed ball (supports may escape to infinity).
// ---------------------------------------------------------------------------

Verdict analyze_negligibility(const FamilyPtr& f,
                              const std::optional<Ball>& k_ball,
                              std::int64_t bound) {
  const Space& s = f->space();
  if (k_ball && !(k_ball->space() == s)) {
    fail(Errc::mixed_spaces, "ball does not live in the family's space");
  }
  NormalFamily nf = normalize_family(f);

  if (s.is_discrete()) {
    const StepFunction& tail = *nf.const_tail();
    StepFunction rest = k_ball ? restrict_to(tail, *k_ball) : tail;
    if (rest.is_zero()) {
      std::int64_t n = static_cast<std::int64_t>(nf.prefix().size()) + 1;
      while (n > 1) {
        StepFunction e = nth(f, n - 1);
        if (k_ball) {
          e = restrict_to(e, *k_ball);
        }
        if (!e.is_zero()) {
          break;
        }
        --n;
      }
      if (k_ball) {
        return Verdict::proved(
            n, Certificate{"restriction-vanishes", *k_ball,
                           "the restriction to the ball is zero from the "
                           "threshold on"});
      }
      return Verdict::proved(
          n, Certificate{"vanishes-on-every-ball", std::nullopt,
                         "entries are zero from the threshold on"});
    }
    Point witness = Point::discrete(s.labels().front());
    for (const auto& label : s.labels()) {
      Point x = Point::discrete(label);
      if (k_ball && !in_ball(x, *k_ball)) {
        continue;
      }
      if (!evaluate(tail, x).is_zero()) {
        witness = x;
        break;
      }
    }
    std::int64_t nw = static_cast<std::int64_t>(nf.prefix().size()) + 1;
    while (nw > 1 && !evaluate(nth(f, nw - 1), witness).is_zero()) {
      --nw;
    }
    return Verdict::refuted(
        Schedule{IntegerMap::affine(1, nw - 1),
                 PointFamily::make(s, {}, PointFamily::ConstantPoint{witness})});
  }

  const Prime& p = s.prime();
  const int dim = s.dim();
  std::int64_t from0 = static_cast<std::int64_t>(nf.prefix().size()) + 1;

  std::vector<TailTerm> kept;
  if (k_ball) {
    std::vector<PointFamily::CoordMonomial> kc;
    for (const auto& coord : k_ball->center().coords()) {
      kc.push_back({coord, IntegerMap::constant(0)});
    }
    BallMap kmap{std::move(kc), IntegerMap::constant(k_ball->gamma())};
    for (const auto& t : nf.terms()) {
      EventualRel rel = ballmap_relation(p, t.ball, kmap);
      from0 = std::max(from0, rel.from);
      if (rel.rel == BallRel::disjoint) {
        continue;
      }
      if (rel.rel == BallRel::first_inside_second) {
        kept.push_back(t);
      } else {
        kept.push_back({kmap, t.coeff});
      }
    }
  } else {
    for (const auto& t : nf.terms()) {
      std::vector<EventualVal> vals;
      vals.reserve(t.ball.center.size());
      for (const auto& c : t.ball.center) {
        vals.push_back(ps_eventual_valuation(coord_pow_sum(p, c)));
      }
      EventualVal v = ev_min(vals);
      if (!v.zero && v.val.slope() < 0) {
        EventualSign cmp = eventual_compare(v.val, t.ball.gamma);
        if (cmp.sign < 0) {
          // The support leaves every fixed ball; irrelevant on each of them.
          from0 = std::max({from0, v.from, cmp.from});
          continue;
        }
      }
      kept.push_back(t);
    }
  }

  Forest forest = build_forest(p, f->ring(), kept);
  forest.from = std::max(forest.from, from0);

  std::int64_t proved_from = forest.from;
  struct BadNode {
    std::size_t node;
    std::int64_t from;
  };
  std::vector<BadNode> bad;
  bool undecided = false;
  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    RegionStatus rs = region_status(p, dim, forest, i);
    if (rs.eventually_empty) {
      proved_from = std::max(proved_from, rs.from);
      continue;
    }
    CoeffZero cz = cs_eventual_zero(forest.nodes[i].cv);
    if (cz.kind == CoeffZero::Kind::zero_from) {
      proved_from = std::max({proved_from, cz.from, rs.from});
    } else if (cz.kind == CoeffZero::Kind::undecidable) {
      undecided = true;
    } else {
      bad.push_back({i, std::max({cz.from, rs.from, forest.from})});
    }
  }

  if (!bad.empty()) {
    for (const auto& b : bad) {
      for (const Coords& cand : make_candidates(p, forest, b.node)) {
        WitnessCheck wc =
            verify_candidate(p, forest, b.node, cand, !k_ball.has_value());
        if (wc.ok) {
          return make_refuted(f, cand, std::max(b.from, wc.from), k_ball);
        }
      }
    }
    return Verdict::unknown(bound);
  }
  if (undecided) {
    return Verdict::unknown(bound);
  }

  if (k_ball) {
    std::int64_t n = proved_from;
    while (n > 1 && restrict_to(nth(f, n - 1), *k_ball).is_zero()) {
      --n;
    }
    return Verdict::proved(
        n, Certificate{"restriction-vanishes", *k_ball,
                       "the restriction to the ball is zero from the threshold "
                       "on"});
  }
  return Verdict::proved(
      proved_from,
      Certificate{"vanishes-on-every-ball", std::nullopt,
                  "on each fixed ball the entries are zero from some index on"});
}

// Scalar family of values along a coordinate schedule, reduced through the
// eventual membership of the schedule in each tail support.
ScalarFamily scalar_along(const FamilyPtr& f, const NormalFamily& nf,
                          const Coords& coords, std::int64_t min_from,
                          const std::function<Point(std::int64_t)>& at) {
  const Prime& p = nf.space().prime();
  CoeffSum total = CoeffSum::zero(nf.ring(), p);
  std::int64_t from =
      std::max(min_from, static_cast<std::int64_t>(nf.prefix().size()) + 1);
  for (const auto& t : nf.terms()) {
    EventualBool eb = ballmap_contains(p, t.ball, coords);
    from = std::max(from, eb.from);
    if (eb.value) {
      total = cs_add(total, t.coeff);
    }
  }
  std::vector<RingElem> prefix;
  prefix.reserve(static_cast<std::size_t>(from - 1));
  for (std::int64_t k = 1; k < from; ++k) {
    prefix.push_back(evaluate(nth(f, k), at(k)));
  }
  return ScalarFamily::from_coeffsum(std::move(prefix), std::move(total));
}

}  // namespace

Verdict is_negligible_on(const FamilyPtr& f, const Ball& k_ball,
                         std::int64_t bound) {
  return analyze_negligibility(f, k_ball, bound);
}

Verdict is_negligible_global(const FamilyPtr& f, std::int64_t bound) {
  return analyze_negligibility(f, std::nullopt, bound);
}

GeneralizedFunction::GeneralizedFunction(FamilyPtr representative)
    : rep_(std::move(representative)) {
  if (!rep_) {
    fail(Errc::precondition_violated, "missing representative family");
  }
}

Verdict gf_equal(const GeneralizedFunction& u, const GeneralizedFunction& v,
                 std::int64_t bound) {
  if (!(u.space() == v.space())) {
    fail(Errc::mixed_spaces, "operands live in different spaces");
  }
  if (!(u.ring() == v.ring())) {
    fail(Errc::mixed_rings, "operands take values in different rings");
  }
  return is_negligible_global(
      SequenceFamily::sum(u.representative(),
                          SequenceFamily::neg(v.representative())),
      bound);
}

ScalarFamily point_value(const FamilyPtr& f, const Point& x) {
  require_in_space(f->space(), x);
  NormalFamily nf = normalize_family(f);
  if (f->space().is_discrete()) {
    RingElem tail_value = evaluate(*nf.const_tail(), x);
    std::vector<RingElem> prefix;
    prefix.reserve(nf.prefix().size());
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(nf.prefix().size());
         ++k) {
      prefix.push_back(evaluate(nth(f, k), x));
    }
    return ScalarFamily::make(f->ring(), std::nullopt, std::move(prefix),
                              ScalarFamily::ConstantTail{std::move(tail_value)});
  }
  Coords coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) {
    coords.push_back({c, IntegerMap::constant(0)});
  }
  return scalar_along(f, nf, coords, 1, [&](std::int64_t) { return x; });
}

ScalarFamily eval_at_gpoint(const FamilyPtr& f, const PointFamily& x) {
  if (!(x.space() == f->space())) {
    fail(Errc::mixed_spaces, "point family lives in a different space");
  }
  if (!is_compactly_supported(x).is_proved()) {
    fail(Errc::not_compactly_supported,
         "point family is not provably confined to a ball");
  }
  NormalFamily nf = normalize_family(f);
  std::int64_t min_from = static_cast<std::int64_t>(x.prefix().size()) + 1;
  if (f->space().is_discrete()) {
    const auto& cp = std::get<PointFamily::ConstantPoint>(x.tail());
    RingElem tail_value = evaluate(*nf.const_tail(), cp.value);
    std::int64_t len = std::max(
        min_from - 1, static_cast<std::int64_t>(nf.prefix().size()));
    std::vector<RingElem> prefix;
    prefix.reserve(static_cast<std::size_t>(len));
    for (std::int64_t k = 1; k <= len; ++k) {
      prefix.push_back(evaluate(nth(f, k), x.at(k)));
    }
    return ScalarFamily::make(f->ring(), std::nullopt, std::move(prefix),
                              ScalarFamily::ConstantTail{std::move(tail_value)});
  }
  Coords coords;
  if (const auto* cp = std::get_if<PointFamily::ConstantPoint>(&x.tail())) {
    for (const auto& c : cp->value.coords()) {
      coords.push_back({c, IntegerMap::constant(0)});
    }
  } else {
    coords = std::get<PointFamily::MonomialPoint>(x.tail()).coords;
  }
  return scalar_along(f, nf, coords, min_from,
                      [&](std::int64_t k) { return x.at(k); });
}

PointFamily refutation_to_gpoint(const FamilyPtr& f, const Verdict& r) {
  if (!r.is_refuted()) {
    fail(Errc::malformed_certificate, "verdict is not a refutation");
  }
  const Schedule& sch = r.schedule();
  if (!sch.points) {
    fail(Errc::malformed_certificate, "schedule carries no witness points");
  }
  const PointFamily& pts = *sch.points;
  if (!(pts.space() == f->space())) {
    fail(Errc::malformed_certificate,
         "witness points live in a different space");
  }
  if (sch.indices.table_size() != 0 || sch.indices.slope() != 1 ||
      sch.indices.offset() < 0) {
    fail(Errc::malformed_certificate,
         "schedule indices are not a contiguous tail");
  }
  const std::int64_t off = sch.indices.offset();
  for (std::int64_t j = 1; j <= 3; ++j) {
    if (evaluate(nth(f, off + j), pts.at(j)).is_zero()) {
      fail(Errc::malformed_certificate,
           "scheduled point fails to witness a nonzero value");
    }
  }
  Point filler = pts.at(1);
  std::vector<Point> prefix(static_cast<std::size_t>(off), filler);
  PointFamily out = [&] {
    if (const auto* cp = std::get_if<PointFamily::ConstantPoint>(&pts.tail())) {
      return PointFamily::make(f->space(), std::move(prefix), *cp);
    }
    const auto& mp = std::get<PointFamily::MonomialPoint>(pts.tail());
    Coords coords;
    coords.reserve(mp.coords.size());
    for (const auto& c : mp.coords) {
      coords.push_back(
          {c.base, IntegerMap::affine(c.exp.slope(),
                                      c.exp.offset() - c.exp.slope() * off)});
    }
    return PointFamily::make(f->space(), std::move(prefix),
                             PointFamily::MonomialPoint{std::move(coords)});
  }();
  if (!is_compactly_supported(out).is_proved()) {
    fail(Errc::malformed_certificate, "witness points escape every ball");
  }
  return out;
}

}  // namespace egorov
