#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "egorov/numbers.hpp"

namespace egorov {

// Either Q_p^n under the max norm or a finite set with the discrete metric.
class Space {
 public:
  static Space qp(Prime p, std::int64_t dim);
  static Space discrete(std::vector<std::string> labels);

  bool is_qp() const noexcept { return p_.has_value(); }
  bool is_discrete() const noexcept { return !p_.has_value(); }
  const Prime& prime() const;
  std::int64_t dim() const;
  const std::vector<std::string>& labels() const;
  std::int64_t label_index(const std::string& label) const;  // -1 if absent

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space() = default;
  std::optional<Prime> p_;
  std::int64_t dim_ = 0;
  std::vector<std::string> labels_;
};

class Point {
 public:
  static Point qp(std::vector<Rational> coords) {
    return Point(std::move(coords));
  }
  static Point discrete(std::string label) { return Point(std::move(label)); }

  bool is_qp() const { return std::holds_alternative<std::vector<Rational>>(v_); }
  const std::vector<Rational>& coords() const {
    return std::get<std::vector<Rational>>(v_);
  }
  const std::string& label() const { return std::get<std::string>(v_); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  explicit Point(std::vector<Rational> coords) : v_(std::move(coords)) {}
  explicit Point(std::string label) : v_(std::move(label)) {}
  std::variant<std::vector<Rational>, std::string> v_;
};

// Throws on dimension/label mismatches between the point and the space.
void require_in_space(const Space& s, const Point& x);

enum class BallRel { disjoint, equal, first_inside_second, second_inside_first };

// Clopen ball {y : d(center, y) <= p^(-gamma)} in Q_p^n.  In a discrete space
// gamma <= 0 denotes the whole space and gamma >= 1 a singleton.  The stored
// center is canonical: every coordinate is digit-truncated at gamma, so two
// balls are equal iff their fields are equal.
class Ball {
 public:
  Ball(const Space& s, const Point& center, std::int64_t gamma);

  const Space& space() const { return space_; }
  const Point& center() const { return center_; }
  std::int64_t gamma() const { return gamma_; }

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  Space space_;
  Point center_;
  std::int64_t gamma_;
};

// Exponent form of the distance: d(x,y) = p^(-e) in Q_p^n; in a discrete
// space Infinity encodes 0 and Finite(0) encodes 1.
ValuationExp distance_exp(const Space& s, const Point& x, const Point& y);

// The p^n clopen children of b at exponent gamma+1 (a discrete whole-space
// ball splits into its singletons).  Errc::not_splittable on singletons.
std::vector<Ball> split_ball(const Ball& b);

BallRel ball_relation(const Ball& a, const Ball& b);

bool in_ball(const Point& x, const Ball& b);

// Deterministic total order used for canonical piece lists: gamma ascending,
// then centers coordinate-by-coordinate in base-p digit order (labels by
// index in a discrete space).
bool ball_less(const Ball& a, const Ball& b);

}  // namespace egorov
