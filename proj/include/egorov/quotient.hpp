#pragma once

#include <cstdint>

#include "egorov/normal_form.hpp"

namespace egorov {

inline constexpr std::int64_t kDefaultBound = 200;

// Decides whether the family is eventually identically zero on the ball.
Verdict is_negligible_on(const FamilyPtr& f, const Ball& k_ball,
                         std::int64_t bound = kDefaultBound);

// Decides whether the family is eventually zero on every fixed ball.
Verdict is_negligible_global(const FamilyPtr& f,
                             std::int64_t bound = kDefaultBound);

// A quotient-class handle: equality and evaluation are verdict-producing
// queries on a representative family.
class GeneralizedFunction {
 public:
  explicit GeneralizedFunction(FamilyPtr representative);

  const FamilyPtr& representative() const { return rep_; }
  const Space& space() const { return rep_->space(); }
  const Ring& ring() const { return rep_->ring(); }

 private:
  FamilyPtr rep_;
};

Verdict gf_equal(const GeneralizedFunction& u, const GeneralizedFunction& v,
                 std::int64_t bound = kDefaultBound);

// Scalar family of values at a fixed point.
ScalarFamily point_value(const FamilyPtr& f, const Point& x);

// Scalar family of values along a compactly supported point family.
ScalarFamily eval_at_gpoint(const FamilyPtr& f, const PointFamily& x);

// Rebuilds the witness point family carried by a refuted negligibility
// verdict, filled with the first witness point before the schedule starts.
PointFamily refutation_to_gpoint(const FamilyPtr& f, const Verdict& r);

}  // namespace egorov
