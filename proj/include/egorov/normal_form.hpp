#pragma once

#include <optional>

#include "egorov/family.hpp"
#include "egorov/generalized.hpp"

namespace egorov {

// Symbolic ball schedule: per-coordinate monomial centers plus a radius
// exponent map.
struct BallMap {
  std::vector<PointFamily::CoordMonomial> center;
  IntegerMap gamma;

  bool operator==(const BallMap&) const = default;
};

Ball ball_at(const Space& s, const BallMap& b, std::int64_t k);

// Eventually constant relation between two ball schedules.
struct EventualRel {
  BallRel rel;
  std::int64_t from;
};

EventualRel ballmap_relation(const Prime& p, const BallMap& a,
                             const BallMap& b);

// Eventual membership of a monomial point schedule in a ball schedule.
EventualBool ballmap_contains(const Prime& p, const BallMap& b,
                              const std::vector<PointFamily::CoordMonomial>& x);

// One symbolic tail term: k -> coeff(k) * indicator of ball(k).
struct TailTerm {
  BallMap ball;
  CoeffSum coeff;
};

// Exact terms up to the prefix, then either a list of symbolic tail terms
// (coordinate spaces) or one fixed function (discrete spaces).  Agrees with
// the source family at every index.
class NormalFamily {
 public:
  NormalFamily(Space s, Ring r, std::vector<StepFunction> prefix,
               std::vector<TailTerm> terms,
               std::optional<StepFunction> const_tail)
      : space_(std::move(s)),
        ring_(std::move(r)),
        prefix_(std::move(prefix)),
        terms_(std::move(terms)),
        const_tail_(std::move(const_tail)) {}

  const Space& space() const { return space_; }
  const Ring& ring() const { return ring_; }
  const std::vector<StepFunction>& prefix() const { return prefix_; }
  const std::vector<TailTerm>& terms() const { return terms_; }
  const std::optional<StepFunction>& const_tail() const { return const_tail_; }

 private:
  Space space_;
  Ring ring_;
  std::vector<StepFunction> prefix_;
  std::vector<TailTerm> terms_;
  std::optional<StepFunction> const_tail_;
};

StepFunction nf_nth(const NormalFamily& f, std::int64_t k);
NormalFamily normalize_family(const FamilyPtr& f);

}  // namespace egorov
