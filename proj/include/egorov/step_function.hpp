#pragma once

#include <vector>

#include "egorov/ring.hpp"
#include "egorov/space.hpp"

namespace egorov {

// Locally constant function with compact support, stored as finitely many
// disjoint balls with nonzero values. The representation is canonical:
// no complete equal-valued sibling set survives (it is merged into the
// parent ball) and pieces are sorted, so extensional equality of functions
// coincides with structural equality of objects.
class StepFunction {
 public:
  struct Piece {
    Ball ball;
    RingElem value;

    bool operator==(const Piece&) const = default;
  };

  static StepFunction zero(const Space& s, const Ring& r);

  const Space& space() const { return space_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  bool operator==(const StepFunction&) const = default;

  // Internal: assumes `pieces` already disjoint with nonzero values;
  // normalizes (sibling merge + sort). Prefer the free functions below.
  static StepFunction from_disjoint(const Space& s, const Ring& r,
                                    std::vector<Piece> pieces);

 private:
  StepFunction(Space s, Ring r) : space_(std::move(s)), ring_(std::move(r)) {}

  Space space_;
  Ring ring_;
  std::vector<Piece> pieces_;
};

StepFunction char_fn(const Ball& b, const RingElem& theta);
RingElem evaluate(const StepFunction& f, const Point& x);
StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction mul(const StepFunction& f, const StepFunction& g);
StepFunction neg(const StepFunction& f);
StepFunction restrict_to(const StepFunction& f, const Ball& k);

// Largest ball around x on which f takes a single value, reported as the
// minimal radius exponent; a function with no pieces is constant everywhere.
struct Constancy {
  static Constancy everywhere() { return {true, 0}; }
  static Constancy at(std::int64_t gamma) { return {false, gamma}; }

  bool everywhere_constant;
  std::int64_t gamma;

  bool operator==(const Constancy&) const = default;
};

Constancy constancy_exponent(const StepFunction& f, const Point& x);

}  // namespace egorov
