#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egorov/errors.hpp"

namespace egorov {

// Total map on indices k >= 1: explicit table entries for k = 1..T,
// then the affine tail k -> a*k + b. All exponent schedules (radius,
// coefficient, center) and index schedules use this shape, which keeps
// every eventual-behavior question decidable by affine comparison.
class IntegerMap {
 public:
  static IntegerMap affine(std::int64_t a, std::int64_t b) {
    return IntegerMap({}, a, b);
  }
  static IntegerMap constant(std::int64_t c) { return affine(0, c); }
  static IntegerMap with_table(std::vector<std::int64_t> table, std::int64_t a,
                               std::int64_t b) {
    return IntegerMap(std::move(table), a, b);
  }

  std::int64_t operator()(std::int64_t k) const;

  const std::vector<std::int64_t>& table() const { return table_; }
  std::int64_t slope() const { return a_; }
  std::int64_t offset() const { return b_; }
  std::int64_t table_size() const {
    return static_cast<std::int64_t>(table_.size());
  }

  bool operator==(const IntegerMap&) const = default;

 private:
  IntegerMap(std::vector<std::int64_t> table, std::int64_t a, std::int64_t b)
      : table_(std::move(table)), a_(a), b_(b) {}

  std::vector<std::int64_t> table_;
  std::int64_t a_;
  std::int64_t b_;
};

IntegerMap im_add(const IntegerMap& m1, const IntegerMap& m2);
IntegerMap im_neg(const IntegerMap& m);
IntegerMap im_sub(const IntegerMap& m1, const IntegerMap& m2);
IntegerMap im_add_const(const IntegerMap& m, std::int64_t c);

// Eventual sign of k -> m1(k) - m2(k): `sign` holds for every k >= `from`,
// and `from` is minimal with that property.
struct EventualSign {
  int sign;
  std::int64_t from;

  bool operator==(const EventualSign&) const = default;
};

EventualSign eventual_compare(const IntegerMap& m1, const IntegerMap& m2);

// Checks the three admissibility conditions for a radius schedule used as a
// deformation: monotone, divergent, and exceeding the index infinitely often.
struct PhiReport {
  bool non_decreasing;
  bool diverges;
  bool infinite_overtake;

  bool ok() const { return non_decreasing && diverges && infinite_overtake; }
  std::string describe() const;

  bool operator==(const PhiReport&) const = default;
};

PhiReport validate_phi(const IntegerMap& m);

}  // namespace egorov
