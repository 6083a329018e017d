#include "egorov/normal_form.hpp"

#include <algorithm>
#include <utility>
#include <variant>

#include "egorov/errors.hpp"

namespace egorov {

namespace {

PowSum coord_pow_sum(const Prime& p, const PointFamily::CoordMonomial& c) {
  if (c.base == 0) {
    return PowSum::zero(p);
  }
  return PowSum::monomial(p, c.base, c.exp);
}

// Eventual valuation of the distance between two center schedules; zero
// means the centers eventually coincide.
EventualVal center_distance(const Prime& p, const BallMap& a,
                            const BallMap& b) {
  std::vector<EventualVal> vals;
  vals.reserve(a.center.size());
  for (std::size_t i = 0; i < a.center.size(); ++i) {
    PowSum d = ps_sub(coord_pow_sum(p, a.center[i]), coord_pow_sum(p, b.center[i]));
    vals.push_back(ps_eventual_valuation(d));
  }
  return ev_min(vals);
}

bool cs_structurally_zero(const CoeffSum& c) {
  return c.re().no_terms() && c.im().no_terms() && c.mods().empty();
}

void merge_term(std::vector<TailTerm>& terms, TailTerm t) {
  if (cs_structurally_zero(t.coeff)) {
    return;
  }
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (it->ball == t.ball) {
      it->coeff = cs_add(it->coeff, t.coeff);
      if (cs_structurally_zero(it->coeff)) {
        terms.erase(it);
      }
      return;
    }
  }
  terms.push_back(std::move(t));
}

std::vector<StepFunction> materialize_prefix(const FamilyPtr& f,
                                             std::int64_t len) {
  std::vector<StepFunction> prefix;
  prefix.reserve(static_cast<std::size_t>(len));
  for (std::int64_t k = 1; k <= len; ++k) {
    prefix.push_back(nth(f, k));
  }
  return prefix;
}

// Drops terms whose coefficients are eventually zero, extending the exact
// prefix far enough to cover the indices where they may still contribute.
NormalFamily finalize(const FamilyPtr& f, std::int64_t prefix_len,
                      std::vector<TailTerm> terms,
                      std::optional<StepFunction> const_tail) {
  std::vector<TailTerm> kept;
  kept.reserve(terms.size());
  for (auto& t : terms) {
    CoeffZero cz = cs_eventual_zero(t.coeff);
    if (cz.kind == CoeffZero::Kind::zero_from) {
      prefix_len = std::max(prefix_len, cz.from - 1);
    } else {
      kept.push_back(std::move(t));
    }
  }
  return NormalFamily(f->space(), f->ring(), materialize_prefix(f, prefix_len),
                      std::move(kept), std::move(const_tail));
}

}  // namespace

Ball ball_at(const Space& s, const BallMap& b, std::int64_t k) {
  const Prime& p = s.prime();
  std::vector<Rational> coords;
  coords.reserve(b.center.size());
  for (const auto& c : b.center) {
    coords.push_back(c.base == 0 ? Rational(0) : c.base * pow_p(p, c.exp(k)));
  }
  return Ball(s, Point::qp(std::move(coords)), b.gamma(k));
}

EventualRel ballmap_relation(const Prime& p, const BallMap& a,
                             const BallMap& b) {
  EventualVal d = center_distance(p, a, b);
  EventualSign gg = eventual_compare(a.gamma, b.gamma);
  std::int64_t from = std::max(d.from, gg.from);
  if (!d.zero) {
    EventualSign da = eventual_compare(d.val, a.gamma);
    EventualSign db = eventual_compare(d.val, b.gamma);
    from = std::max({from, da.from, db.from});
    if (da.sign < 0 && db.sign < 0) {
      return {BallRel::disjoint, from};
    }
  }
  if (gg.sign == 0) {
    return {BallRel::equal, from};
  }
  if (gg.sign > 0) {
    return {BallRel::first_inside_second, from};
  }
  return {BallRel::second_inside_first, from};
}

EventualBool ballmap_contains(
    const Prime& p, const BallMap& b,
    const std::vector<PointFamily::CoordMonomial>& x) {
  std::vector<EventualVal> vals;
  vals.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    PowSum d = ps_sub(coord_pow_sum(p, x[i]), coord_pow_sum(p, b.center[i]));
    vals.push_back(ps_eventual_valuation(d));
  }
  EventualVal dist = ev_min(vals);
  if (dist.zero) {
    return {true, dist.from};
  }
  EventualSign cmp = eventual_compare(dist.val, b.gamma);
  return {cmp.sign >= 0, std::max(dist.from, cmp.from)};
}

StepFunction nf_nth(const NormalFamily& f, std::int64_t k) {
  if (k < 1) {
    fail(Errc::index_zero, "family indices start at 1");
  }
  if (k <= static_cast<std::int64_t>(f.prefix().size())) {
    return f.prefix()[static_cast<std::size_t>(k - 1)];
  }
  if (f.const_tail()) {
    return *f.const_tail();
  }
  StepFunction out = StepFunction::zero(f.space(), f.ring());
  for (const auto& t : f.terms()) {
    RingElem c = cs_eval(t.coeff, k);
    if (c.is_zero()) {
      continue;
    }
    out = add(out, char_fn(ball_at(f.space(), t.ball, k), c));
  }
  return out;
}

NormalFamily normalize_family(const FamilyPtr& f) {
  const Space& s = f->space();
  const Ring& r = f->ring();

  if (const auto* c = std::get_if<SequenceFamily::ConstantNode>(&f->node())) {
    if (s.is_discrete()) {
      return NormalFamily(s, r, {}, {}, c->value);
    }
    const Prime& p = s.prime();
    std::vector<TailTerm> terms;
    for (const auto& piece : c->value.pieces()) {
      std::vector<PointFamily::CoordMonomial> center;
      for (const auto& coord : piece.ball.center().coords()) {
        center.push_back({coord, IntegerMap::constant(0)});
      }
      BallMap bm{std::move(center), IntegerMap::constant(piece.ball.gamma())};
      merge_term(terms, {std::move(bm),
                         CoeffSum::monomial(r, p, piece.value,
                                            IntegerMap::constant(0))});
    }
    return finalize(f, 0, std::move(terms), std::nullopt);
  }

  if (const auto* m =
          std::get_if<SequenceFamily::MonomialIndicatorNode>(&f->node())) {
    const Prime& p = s.prime();
    std::vector<PointFamily::CoordMonomial> center;
    for (const auto& coord : m->center_base.coords()) {
      center.push_back({coord, m->center_exp});
    }
    BallMap bm{std::move(center), m->radius_exp};
    std::vector<TailTerm> terms;
    merge_term(terms,
               {std::move(bm), CoeffSum::monomial(r, p, m->coeff_unit,
                                                  m->coeff_exp)});
    return finalize(f, 0, std::move(terms), std::nullopt);
  }

  if (const auto* n = std::get_if<SequenceFamily::NegNode>(&f->node())) {
    NormalFamily a = normalize_family(n->arg);
    std::vector<StepFunction> prefix;
    prefix.reserve(a.prefix().size());
    for (const auto& e : a.prefix()) {
      prefix.push_back(neg(e));
    }
    std::vector<TailTerm> terms;
    terms.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
      terms.push_back({t.ball, cs_neg(t.coeff)});
    }
    std::optional<StepFunction> tail;
    if (a.const_tail()) {
      tail = neg(*a.const_tail());
    }
    return NormalFamily(s, r, std::move(prefix), std::move(terms),
                        std::move(tail));
  }

  if (const auto* e = std::get_if<SequenceFamily::ExplicitThenNode>(&f->node())) {
    NormalFamily t = normalize_family(e->tail);
    std::int64_t len =
        std::max<std::int64_t>(static_cast<std::int64_t>(e->prefix.size()),
                               static_cast<std::int64_t>(t.prefix().size()));
    return NormalFamily(s, r, materialize_prefix(f, len), t.terms(),
                        t.const_tail());
  }

  if (const auto* sum = std::get_if<SequenceFamily::SumNode>(&f->node())) {
    NormalFamily a = normalize_family(sum->lhs);
    NormalFamily b = normalize_family(sum->rhs);
    std::int64_t len =
        std::max<std::int64_t>(static_cast<std::int64_t>(a.prefix().size()),
                               static_cast<std::int64_t>(b.prefix().size()));
    if (s.is_discrete()) {
      return NormalFamily(s, r, materialize_prefix(f, len), {},
                          add(*a.const_tail(), *b.const_tail()));
    }
    std::vector<TailTerm> terms = a.terms();
    for (const auto& t : b.terms()) {
      merge_term(terms, t);
    }
    return finalize(f, len, std::move(terms), std::nullopt);
  }

  const auto& prod = std::get<SequenceFamily::ProdNode>(f->node());
  NormalFamily a = normalize_family(prod.lhs);
  NormalFamily b = normalize_family(prod.rhs);
  std::int64_t len =
      std::max<std::int64_t>(static_cast<std::int64_t>(a.prefix().size()),
                             static_cast<std::int64_t>(b.prefix().size()));
  if (s.is_discrete()) {
    return NormalFamily(s, r, materialize_prefix(f, len), {},
                        mul(*a.const_tail(), *b.const_tail()));
  }
  const Prime& p = s.prime();
  std::vector<TailTerm> terms;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      EventualRel rel = ballmap_relation(p, ta.ball, tb.ball);
      len = std::max(len, rel.from - 1);
      if (rel.rel == BallRel::disjoint) {
        continue;
      }
      const BallMap& inner =
          rel.rel == BallRel::second_inside_first ? tb.ball : ta.ball;
      merge_term(terms, {inner, cs_mul(ta.coeff, tb.coeff)});
    }
  }
  return finalize(f, len, std::move(terms), std::nullopt);
}

}  // namespace egorov
