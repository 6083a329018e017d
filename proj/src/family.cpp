#include "egorov/family.hpp"

namespace egorov {

namespace {

void require_same(const FamilyPtr& a, const FamilyPtr& b) {
  if (a->space() != b->space())
    fail(Errc::mixed_spaces, "families live on different spaces");
  if (a->ring() != b->ring())
    fail(Errc::mixed_rings, "families take values in different rings");
}

}  // namespace

FamilyPtr SequenceFamily::constant(StepFunction value) {
  Space s = value.space();
  Ring r = value.ring();
  return FamilyPtr(new SequenceFamily(std::move(s), std::move(r),
                                      ConstantNode{std::move(value)}));
}

FamilyPtr SequenceFamily::explicit_then(std::vector<StepFunction> prefix,
                                        FamilyPtr tail) {
  for (const auto& f : prefix) {
    if (f.space() != tail->space())
      fail(Errc::mixed_spaces, "prefix term lives on another space");
    if (f.ring() != tail->ring())
      fail(Errc::mixed_rings, "prefix term takes values in another ring");
  }
  Space s = tail->space();
  Ring r = tail->ring();
  return FamilyPtr(new SequenceFamily(
      std::move(s), std::move(r),
      ExplicitThenNode{std::move(prefix), std::move(tail)}));
}

FamilyPtr SequenceFamily::monomial_indicator(const Space& s, const Ring& r,
                                             RingElem coeff_unit,
                                             IntegerMap coeff_exp,
                                             Point center_base,
                                             IntegerMap center_exp,
                                             IntegerMap radius_exp) {
  if (!s.is_qp())
    fail(Errc::not_supported,
         "monomial indicators need a coordinate space");
  require_in_space(s, center_base);
  if (coeff_unit.ring() != r)
    fail(Errc::mixed_rings, "coefficient unit is not in the stated ring");
  if (coeff_unit.is_zero())
    fail(Errc::precondition_violated, "coefficient unit must be nonzero");
  return FamilyPtr(new SequenceFamily(
      s, r,
      MonomialIndicatorNode{std::move(coeff_unit), std::move(coeff_exp),
                            std::move(center_base), std::move(center_exp),
                            std::move(radius_exp)}));
}

FamilyPtr SequenceFamily::sum(FamilyPtr lhs, FamilyPtr rhs) {
  require_same(lhs, rhs);
  Space s = lhs->space();
  Ring r = lhs->ring();
  return FamilyPtr(new SequenceFamily(std::move(s), std::move(r),
                                      SumNode{std::move(lhs), std::move(rhs)}));
}

FamilyPtr SequenceFamily::prod(FamilyPtr lhs, FamilyPtr rhs) {
  require_same(lhs, rhs);
  Space s = lhs->space();
  Ring r = lhs->ring();
  return FamilyPtr(new SequenceFamily(
      std::move(s), std::move(r), ProdNode{std::move(lhs), std::move(rhs)}));
}

FamilyPtr SequenceFamily::neg(FamilyPtr arg) {
  Space s = arg->space();
  Ring r = arg->ring();
  return FamilyPtr(
      new SequenceFamily(std::move(s), std::move(r), NegNode{std::move(arg)}));
}

StepFunction nth(const SequenceFamily& f, std::int64_t k) {
  if (k < 1) fail(Errc::index_zero, "family terms start at k = 1");
  const Space& s = f.space();
  const Ring& r = f.ring();
  struct Visitor {
    const Space& s;
    const Ring& r;
    std::int64_t k;

    StepFunction operator()(const SequenceFamily::ConstantNode& n) const {
      return n.value;
    }
    StepFunction operator()(const SequenceFamily::ExplicitThenNode& n) const {
      if (k <= static_cast<std::int64_t>(n.prefix.size()))
        return n.prefix[static_cast<std::size_t>(k - 1)];
      return nth(n.tail, k);
    }
    StepFunction operator()(
        const SequenceFamily::MonomialIndicatorNode& n) const {
      const Prime& p = s.prime();
      const RingElem coeff =
          ring_mul(n.coeff_unit, ring_pow_p(r, p, n.coeff_exp(k)));
      const Rational scale = pow_p(p, n.center_exp(k));
      std::vector<Rational> coords = n.center_base.coords();
      for (auto& c : coords) c *= scale;
      return char_fn(Ball(s, Point::qp(std::move(coords)), n.radius_exp(k)),
                     coeff);
    }
    StepFunction operator()(const SequenceFamily::SumNode& n) const {
      return add(nth(n.lhs, k), nth(n.rhs, k));
    }
    StepFunction operator()(const SequenceFamily::ProdNode& n) const {
      return mul(nth(n.lhs, k), nth(n.rhs, k));
    }
    StepFunction operator()(const SequenceFamily::NegNode& n) const {
      return neg(nth(n.arg, k));
    }
  };
  return std::visit(Visitor{s, r, k}, f.node());
}

StepFunction nth(const FamilyPtr& f, std::int64_t k) { return nth(*f, k); }

RingElem member_value(const SequenceFamily& f, std::int64_t k, const Point& x) {
  if (k < 1) fail(Errc::index_zero, "family terms start at k = 1");
  require_in_space(f.space(), x);
  const Space& s = f.space();
  const Ring& r = f.ring();
  struct Visitor {
    const Space& s;
    const Ring& r;
    std::int64_t k;
    const Point& x;

    RingElem operator()(const SequenceFamily::ConstantNode& n) const {
      return evaluate(n.value, x);
    }
    RingElem operator()(const SequenceFamily::ExplicitThenNode& n) const {
      if (k <= static_cast<std::int64_t>(n.prefix.size()))
        return evaluate(n.prefix[static_cast<std::size_t>(k - 1)], x);
      return member_value(n.tail, k, x);
    }
    RingElem operator()(
        const SequenceFamily::MonomialIndicatorNode& n) const {
      const Prime& p = s.prime();
      const Rational scale = pow_p(p, n.center_exp(k));
      const std::int64_t gamma = n.radius_exp(k);
      for (std::int64_t i = 0; i < s.dim(); ++i) {
        const Rational& base = n.center_base.coords()[static_cast<std::size_t>(i)];
        ValuationExp v =
            valuation(p, x.coords()[static_cast<std::size_t>(i)] - base * scale);
        if (v < ValuationExp::finite(gamma)) return RingElem::zero(r);
      }
      return ring_mul(n.coeff_unit, ring_pow_p(r, p, n.coeff_exp(k)));
    }
    RingElem operator()(const SequenceFamily::SumNode& n) const {
      return ring_add(member_value(n.lhs, k, x), member_value(n.rhs, k, x));
    }
    RingElem operator()(const SequenceFamily::ProdNode& n) const {
      return ring_mul(member_value(n.lhs, k, x), member_value(n.rhs, k, x));
    }
    RingElem operator()(const SequenceFamily::NegNode& n) const {
      return ring_neg(member_value(n.arg, k, x));
    }
  };
  return std::visit(Visitor{s, r, k, x}, f.node());
}

RingElem member_value(const FamilyPtr& f, std::int64_t k, const Point& x) {
  return member_value(*f, k, x);
}

}  // namespace egorov
