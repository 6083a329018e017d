#include "egorov/space.hpp"

#include <algorithm>

namespace egorov {

Space Space::qp(Prime p, std::int64_t dim) {
  if (dim < 1) fail(Errc::dimension_mismatch, "dimension must be >= 1");
  Space s;
  s.p_ = p;
  s.dim_ = dim;
  return s;
}

Space Space::discrete(std::vector<std::string> labels) {
  if (labels.empty())
    fail(Errc::not_supported, "a discrete space needs at least one point");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        fail(Errc::not_supported, "duplicate label \"" + labels[i] + "\"");
  Space s;
  s.labels_ = std::move(labels);
  return s;
}

const Prime& Space::prime() const {
  if (!p_) fail(Errc::not_supported, "discrete space has no prime");
  return *p_;
}

std::int64_t Space::dim() const {
  if (!p_) fail(Errc::not_supported, "discrete space has no dimension");
  return dim_;
}

const std::vector<std::string>& Space::labels() const {
  if (p_) fail(Errc::not_supported, "coordinate space has no labels");
  return labels_;
}

std::int64_t Space::label_index(const std::string& label) const {
  const auto& ls = labels();
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return static_cast<std::int64_t>(i);
  return -1;
}

void require_in_space(const Space& s, const Point& x) {
  if (s.is_qp()) {
    if (!x.is_qp() ||
        static_cast<std::int64_t>(x.coords().size()) != s.dim())
      fail(Errc::dimension_mismatch, "point does not match the space");
    return;
  }
  if (x.is_qp() || s.label_index(x.label()) < 0)
    fail(Errc::mixed_spaces, "point is not a member of the discrete space");
}

Ball::Ball(const Space& s, const Point& center, std::int64_t gamma)
    : space_(s), center_(center), gamma_(gamma) {
  require_in_space(s, center);
  if (s.is_qp()) {
    std::vector<Rational> canon;
    canon.reserve(center.coords().size());
    for (const Rational& c : center.coords())
      canon.push_back(digit_truncate(s.prime(), c, gamma));
    center_ = Point::qp(std::move(canon));
    return;
  }
  // Discrete: gamma <= 0 is the whole space, gamma >= 1 a singleton; a
  // one-point space has only the whole-space ball.
  if (gamma_ <= 0 || s.labels().size() == 1) {
    gamma_ = 0;
    center_ = Point::discrete(s.labels().front());
  } else {
    gamma_ = 1;
  }
}

ValuationExp distance_exp(const Space& s, const Point& x, const Point& y) {
  require_in_space(s, x);
  require_in_space(s, y);
  if (s.is_discrete())
    return x.label() == y.label() ? ValuationExp::infinity()
                                  : ValuationExp::finite(0);
  ValuationExp best = ValuationExp::infinity();
  for (std::int64_t i = 0; i < s.dim(); ++i) {
    ValuationExp v = valuation(s.prime(), x.coords()[i] - y.coords()[i]);
    if (v < best) best = v;
  }
  return best;
}

std::vector<Ball> split_ball(const Ball& b) {
  const Space& s = b.space();
  if (s.is_discrete()) {
    if (b.gamma() >= 1 || s.labels().size() == 1)
      fail(Errc::not_splittable, "a singleton ball cannot be split");
    std::vector<Ball> out;
    out.reserve(s.labels().size());
    for (const auto& l : s.labels())
      out.emplace_back(s, Point::discrete(l), 1);
    return out;
  }
  const Prime& p = s.prime();
  const std::int64_t n = s.dim();
  const std::int64_t count = p.value();
  const Rational step = pow_p(p, b.gamma());

  std::vector<Ball> out;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Rational> coords = b.center().coords();
    for (std::int64_t i = 0; i < n; ++i)
      coords[i] += Rational(idx[i]) * step;
    out.emplace_back(s, Point::qp(std::move(coords)), b.gamma() + 1);
    // odometer over {0..p-1}^n, last coordinate fastest
    std::int64_t i = n - 1;
    while (i >= 0) {
      if (++idx[i] < count) break;
      idx[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

BallRel ball_relation(const Ball& a, const Ball& b) {
  if (a.space() != b.space())
    fail(Errc::mixed_spaces, "balls live in different spaces");
  const ValuationExp d = distance_exp(a.space(), a.center(), b.center());
  const std::int64_t m = std::min(a.gamma(), b.gamma());
  if (d < ValuationExp::finite(m)) return BallRel::disjoint;
  if (a.gamma() == b.gamma()) return BallRel::equal;
  return a.gamma() > b.gamma() ? BallRel::first_inside_second
                               : BallRel::second_inside_first;
}

bool in_ball(const Point& x, const Ball& b) {
  return distance_exp(b.space(), b.center(), x) >=
         ValuationExp::finite(b.gamma());
}

namespace {

// Base-p digit order on canonical truncations: compare digits from the
// lowest exponent present upward; the first differing digit decides.
int compare_coord(const Prime& p, const Rational& a, const Rational& b) {
  if (a == b) return 0;
  const DigitExpansion da = digit_expansion(p, a);
  const DigitExpansion db = digit_expansion(p, b);
  std::int64_t lo = std::min(da.digits.empty() ? 0 : da.start,
                             db.digits.empty() ? 0 : db.start);
  std::int64_t hi = std::max(
      da.digits.empty() ? 0 : da.start + static_cast<std::int64_t>(da.digits.size()),
      db.digits.empty() ? 0 : db.start + static_cast<std::int64_t>(db.digits.size()));
  for (std::int64_t j = lo; j < hi; ++j) {
    auto digit = [&](const DigitExpansion& d) -> int {
      const std::int64_t off = j - d.start;
      if (off < 0 || off >= static_cast<std::int64_t>(d.digits.size())) return 0;
      return d.digits[static_cast<std::size_t>(off)];
    };
    const int x = digit(da), y = digit(db);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool ball_less(const Ball& a, const Ball& b) {
  if (a.gamma() != b.gamma()) return a.gamma() < b.gamma();
  if (a.space().is_discrete()) {
    return a.space().label_index(a.center().label()) <
           b.space().label_index(b.center().label());
  }
  const Prime& p = a.space().prime();
  for (std::int64_t i = 0; i < a.space().dim(); ++i) {
    const int c = compare_coord(p, a.center().coords()[i], b.center().coords()[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace egorov
