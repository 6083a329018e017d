#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "egorov/ring.hpp"
#include "egorov/space.hpp"
#include "egorov/symbolic.hpp"

namespace egorov {

// k -> ring element of the form sum_i unit_i * p^{exp_i(k)}, the coefficient
// shape produced by evaluating monomial families.  Exact at every index;
// eventual vanishing is decidable except for modular rings with several
// distinct exponent schedules.
class CoeffSum {
 public:
  struct ModMonomial {
    BigInt unit;  // canonical residue, nonzero mod the ring modulus
    IntegerMap exp;

    bool operator==(const ModMonomial&) const = default;
  };

  static CoeffSum zero(const Ring& r, const Prime& p);
  static CoeffSum monomial(const Ring& r, const Prime& p, const RingElem& unit,
                           IntegerMap exp);

  const Ring& ring() const { return ring_; }
  const Prime& prime() const { return p_; }

  // Per-ring internals (rational uses re only; modular uses mods).
  const PowSum& re() const { return re_; }
  const PowSum& im() const { return im_; }
  const std::vector<ModMonomial>& mods() const { return mods_; }

  bool operator==(const CoeffSum&) const = default;

 private:
  CoeffSum(Ring r, Prime p)
      : ring_(std::move(r)), p_(p), re_(PowSum::zero(p)), im_(PowSum::zero(p)) {}

  friend CoeffSum cs_add(const CoeffSum&, const CoeffSum&);
  friend CoeffSum cs_neg(const CoeffSum&);
  friend CoeffSum cs_mul(const CoeffSum&, const CoeffSum&);

  Ring ring_;
  Prime p_;
  PowSum re_;
  PowSum im_;
  std::vector<ModMonomial> mods_;
};

CoeffSum cs_add(const CoeffSum& a, const CoeffSum& b);
CoeffSum cs_neg(const CoeffSum& a);
CoeffSum cs_sub(const CoeffSum& a, const CoeffSum& b);
CoeffSum cs_mul(const CoeffSum& a, const CoeffSum& b);
RingElem cs_eval(const CoeffSum& s, std::int64_t k);

struct CoeffZero {
  enum class Kind { zero_from, nonzero_from, undecidable };
  Kind kind;
  std::int64_t from;
};

CoeffZero cs_eventual_zero(const CoeffSum& s);

// A generalized number representative: exact entries up to the prefix, then
// a closed-form tail.  `make` normalizes so that a non-zero tail is live
// (nonzero at every index past the prefix) and a zero tail starts right
// after the last nonzero entry, making ideal-membership thresholds exact.
class ScalarFamily {
 public:
  struct ZeroTail {
    bool operator==(const ZeroTail&) const = default;
  };
  struct ConstantTail {
    RingElem value;  // nonzero
    bool operator==(const ConstantTail&) const = default;
  };
  struct MonomialTail {
    RingElem unit;  // nonzero; value(k) = unit * p^{exp(k)}
    IntegerMap exp;
    bool operator==(const MonomialTail&) const = default;
  };
  struct SumTail {
    CoeffSum value;
    bool operator==(const SumTail&) const = default;
  };
  using Tail = std::variant<ZeroTail, ConstantTail, MonomialTail, SumTail>;

  static ScalarFamily make(const Ring& r, std::optional<Prime> p,
                           std::vector<RingElem> prefix, Tail tail);
  static ScalarFamily from_coeffsum(std::vector<RingElem> prefix,
                                    const CoeffSum& tail);

  const Ring& ring() const { return ring_; }
  const std::optional<Prime>& prime() const { return p_; }
  const std::vector<RingElem>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  // False only for the undecidable modular shape: then nothing is known
  // about the tail's vanishing pattern.
  bool tail_decided() const { return tail_decided_; }

  RingElem at(std::int64_t k) const;

 private:
  ScalarFamily(Ring r, std::optional<Prime> p, std::vector<RingElem> prefix,
               Tail tail, bool decided)
      : ring_(std::move(r)),
        p_(p),
        prefix_(std::move(prefix)),
        tail_(std::move(tail)),
        tail_decided_(decided) {}

  Ring ring_;
  std::optional<Prime> p_;
  std::vector<RingElem> prefix_;
  Tail tail_;
  bool tail_decided_;
};

// A generalized point representative: explicit prefix, then either a fixed
// point or per-coordinate monomials base * p^{exp(k)}.
class PointFamily {
 public:
  struct CoordMonomial {
    Rational base;  // 0 encodes the zero coordinate
    IntegerMap exp;
    bool operator==(const CoordMonomial&) const = default;
  };
  struct ConstantPoint {
    Point value;
    bool operator==(const ConstantPoint&) const = default;
  };
  struct MonomialPoint {
    std::vector<CoordMonomial> coords;
    bool operator==(const MonomialPoint&) const = default;
  };
  using Tail = std::variant<ConstantPoint, MonomialPoint>;

  static PointFamily make(const Space& s, std::vector<Point> prefix,
                          Tail tail);

  const Space& space() const { return space_; }
  const std::vector<Point>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }

  Point at(std::int64_t k) const;

  bool operator==(const PointFamily&) const = default;

 private:
  PointFamily(Space s, std::vector<Point> prefix, Tail tail)
      : space_(std::move(s)), prefix_(std::move(prefix)), tail_(std::move(tail)) {}

  Space space_;
  std::vector<Point> prefix_;
  Tail tail_;
};

// Infinite strictly increasing index stream, optionally with a witness
// point for each scheduled index.
struct Schedule {
  IntegerMap indices;
  std::optional<PointFamily> points;
};

struct Certificate {
  std::string kind;
  std::optional<Ball> ball;
  std::string note;
};

class Verdict {
 public:
  enum class Kind { proved, refuted, unknown };

  static Verdict proved(std::int64_t n, Certificate c) {
    Verdict v(Kind::proved);
    v.n_ = n;
    v.certificate_ = std::move(c);
    return v;
  }
  static Verdict refuted(Schedule s) {
    Verdict v(Kind::refuted);
    v.schedule_ = std::move(s);
    return v;
  }
  static Verdict unknown(std::int64_t checked_up_to) {
    Verdict v(Kind::unknown);
    v.checked_up_to_ = checked_up_to;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_proved() const { return kind_ == Kind::proved; }
  bool is_refuted() const { return kind_ == Kind::refuted; }
  bool is_unknown() const { return kind_ == Kind::unknown; }

  std::int64_t n() const {
    if (!is_proved()) fail(Errc::not_supported, "verdict carries no threshold");
    return n_;
  }
  const Certificate& certificate() const {
    if (!is_proved()) fail(Errc::not_supported, "verdict carries no certificate");
    return *certificate_;
  }
  const Schedule& schedule() const {
    if (!is_refuted()) fail(Errc::not_supported, "verdict carries no schedule");
    return *schedule_;
  }
  std::int64_t checked_up_to() const {
    if (!is_unknown()) fail(Errc::not_supported, "verdict is decided");
    return checked_up_to_;
  }

 private:
  explicit Verdict(Kind k) : kind_(k) {}

  Kind kind_;
  std::int64_t n_ = 0;
  std::int64_t checked_up_to_ = 0;
  std::optional<Certificate> certificate_;
  std::optional<Schedule> schedule_;
};

Verdict scalar_is_zero(const ScalarFamily& s);
Verdict scalar_equal(const ScalarFamily& s, const ScalarFamily& t);
Verdict gpoint_equiv(const PointFamily& x, const PointFamily& y);

// Proved verdicts carry the containing ball in the certificate.
Verdict is_compactly_supported(const PointFamily& x);

}  // namespace egorov
