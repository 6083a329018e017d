#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egorov/quotient.hpp"

namespace egorov {

// chi on the balls {|x - p^k| <= p^-(2k+1)}: zero at every fixed point from
// some index on, yet not negligible on the unit ball.
FamilyPtr counterexample_family(const Prime& p);

// Indicator family with value theta on the clopen normalizations of the
// balls {y : d(x_k, y) < d(x_k, x)/2}.  The points must follow a monomial
// law x_k = c * p^(a*k + b) with a >= 1, otherwise no symbolic family exists.
FamilyPtr stripped_ball_family(const Space& s, const Point& x,
                               const std::vector<Point>& xs,
                               const RingElem& theta);

// k -> p^k on the balls {|x| <= p^-k}.
FamilyPtr delta_embedding(const Prime& p);

// k -> p^k on the balls {|x| <= p^-phi(k)}.
FamilyPtr phi_delta(const Prime& p, const IntegerMap& phi);

// The point family k -> p^k.
PointFamily witness_x0(const Prime& p);

struct SeparationReport {
  Prime p;
  IntegerMap phi;
  std::int64_t samples;
  std::uint64_t seed;

  struct StandardRecord {
    Point x;
    Verdict agree;
  };
  struct GeneralizedRecord {
    PointFamily x;
    ScalarFamily lhs;
    ScalarFamily rhs;
    Verdict equal;
  };

  std::vector<StandardRecord> standard_records;
  std::vector<GeneralizedRecord> generalized_records;
  bool tail_outside_both_supports;
  std::int64_t standard_disagreements;
  std::string conclusion;
};

// Compares the phi-indexed bump family with the delta family at sampled
// fixed points and at the escaping witness point family.
SeparationReport separation_report(const Prime& p, const IntegerMap& phi,
                                   std::int64_t samples, std::uint64_t seed);

struct CounterexampleReport {
  Prime p;
  std::int64_t samples;
  std::uint64_t seed;

  struct SampleRecord {
    Rational alpha;
    Verdict zero;
  };

  std::vector<SampleRecord> records;
  Verdict on_unit_ball;
  Verdict global;
  std::int64_t schedule_checked;
  bool schedule_values_unit;
  std::string conclusion;
};

// Evaluates the counterexample family at sampled rationals and verifies the
// refutation schedule on the unit ball.
CounterexampleReport counterexample_report(const Prime& p,
                                           std::int64_t samples,
                                           std::uint64_t seed);

}  // namespace egorov
