#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "egorov/integer_map.hpp"
#include "egorov/step_function.hpp"

namespace egorov {

class SequenceFamily;
using FamilyPtr = std::shared_ptr<const SequenceFamily>;

// Symbolic total map k -> StepFunction (k >= 1), closed under pointwise
// sum, product and negation.  The monomial-indicator leaf
//   k -> (coeff_unit * p^{coeff_exp(k)}) * indicator of
//        Ball(center_base * p^{center_exp(k)}, radius_exp(k))
// covers every coefficient/support schedule the calculus can decide.
class SequenceFamily {
 public:
  struct ConstantNode {
    StepFunction value;
  };
  struct ExplicitThenNode {
    std::vector<StepFunction> prefix;  // terms 1..prefix.size()
    FamilyPtr tail;                    // still indexed by the original k
  };
  struct MonomialIndicatorNode {
    RingElem coeff_unit;  // nonzero
    IntegerMap coeff_exp;
    Point center_base;
    IntegerMap center_exp;  // constant 0 for a fixed center
    IntegerMap radius_exp;
  };
  struct SumNode {
    FamilyPtr lhs, rhs;
  };
  struct ProdNode {
    FamilyPtr lhs, rhs;
  };
  struct NegNode {
    FamilyPtr arg;
  };
  using Node = std::variant<ConstantNode, ExplicitThenNode,
                            MonomialIndicatorNode, SumNode, ProdNode, NegNode>;

  static FamilyPtr constant(StepFunction value);
  static FamilyPtr explicit_then(std::vector<StepFunction> prefix,
                                 FamilyPtr tail);
  static FamilyPtr monomial_indicator(const Space& s, const Ring& r,
                                      RingElem coeff_unit, IntegerMap coeff_exp,
                                      Point center_base, IntegerMap center_exp,
                                      IntegerMap radius_exp);
  static FamilyPtr sum(FamilyPtr lhs, FamilyPtr rhs);
  static FamilyPtr prod(FamilyPtr lhs, FamilyPtr rhs);
  static FamilyPtr neg(FamilyPtr arg);

  const Space& space() const { return space_; }
  const Ring& ring() const { return ring_; }
  const Node& node() const { return node_; }

 private:
  SequenceFamily(Space s, Ring r, Node node)
      : space_(std::move(s)), ring_(std::move(r)), node_(std::move(node)) {}

  Space space_;
  Ring ring_;
  Node node_;
};

StepFunction nth(const SequenceFamily& f, std::int64_t k);
StepFunction nth(const FamilyPtr& f, std::int64_t k);

// Value of the k-th member at a single point, computed on the expression
// tree.  Agrees with evaluate(nth(f, k), x) but skips building the member's
// canonical form, so it stays cheap even when that form has many pieces.
RingElem member_value(const SequenceFamily& f, std::int64_t k, const Point& x);
RingElem member_value(const FamilyPtr& f, std::int64_t k, const Point& x);

}  // namespace egorov
