#include "egorov/integer_map.hpp"

#include <algorithm>
#include <limits>

namespace egorov {

namespace {

std::int64_t checked_affine(std::int64_t a, std::int64_t k, std::int64_t b) {
  const __int128 v = static_cast<__int128>(a) * k + b;
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    fail(Errc::not_supported, "index map value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

// Smallest integer >= x/y for y > 0.
std::int64_t ceil_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if (x % y != 0 && ((x < 0) != (y < 0))) return q;  // trunc already ceiled
  if (x % y != 0) ++q;
  return q;
}

int sign_of(std::int64_t v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

}  // namespace

std::int64_t IntegerMap::operator()(std::int64_t k) const {
  if (k < 1) fail(Errc::index_zero, "index maps start at k = 1");
  if (k <= table_size()) return table_[static_cast<std::size_t>(k - 1)];
  return checked_affine(a_, k, b_);
}

IntegerMap im_add(const IntegerMap& m1, const IntegerMap& m2) {
  const std::int64_t t = std::max(m1.table_size(), m2.table_size());
  std::vector<std::int64_t> table;
  table.reserve(static_cast<std::size_t>(t));
  for (std::int64_t k = 1; k <= t; ++k) table.push_back(m1(k) + m2(k));
  return IntegerMap::with_table(std::move(table), m1.slope() + m2.slope(),
                                m1.offset() + m2.offset());
}

IntegerMap im_neg(const IntegerMap& m) {
  std::vector<std::int64_t> table = m.table();
  for (auto& v : table) v = -v;
  return IntegerMap::with_table(std::move(table), -m.slope(), -m.offset());
}

IntegerMap im_sub(const IntegerMap& m1, const IntegerMap& m2) {
  return im_add(m1, im_neg(m2));
}

IntegerMap im_add_const(const IntegerMap& m, std::int64_t c) {
  std::vector<std::int64_t> table = m.table();
  for (auto& v : table) v += c;
  return IntegerMap::with_table(std::move(table), m.slope(), m.offset() + c);
}

EventualSign eventual_compare(const IntegerMap& m1, const IntegerMap& m2) {
  const IntegerMap d = im_sub(m1, m2);
  const std::int64_t a = d.slope(), b = d.offset();
  int sign;
  std::int64_t tail_from;  // first tail index where the sign already holds
  if (a > 0) {
    sign = 1;
    tail_from = ceil_div(1 - b, a);
  } else if (a < 0) {
    sign = -1;
    tail_from = ceil_div(b + 1, -a);
  } else {
    sign = sign_of(b);
    tail_from = 1;
  }
  std::int64_t from = std::max<std::int64_t>(d.table_size() + 1, tail_from);
  while (from > 1 && sign_of(d(from - 1)) == sign) --from;
  return {sign, from};
}

std::string PhiReport::describe() const {
  if (ok()) return "ok";
  std::string out;
  auto append = [&out](const char* part) {
    if (!out.empty()) out += "; ";
    out += part;
  };
  if (!non_decreasing) append("not non-decreasing");
  if (!diverges) append("does not diverge");
  if (!infinite_overtake) append("exceeds the index only finitely often");
  return out;
}

PhiReport validate_phi(const IntegerMap& m) {
  PhiReport r{true, true, true};
  const std::int64_t t = m.table_size();
  for (std::int64_t k = 1; k < t; ++k)
    if (m(k + 1) < m(k)) r.non_decreasing = false;
  if (t >= 1 && m(t + 1) < m(t)) r.non_decreasing = false;
  if (m.slope() < 0) r.non_decreasing = false;
  if (m.slope() < 1) r.diverges = false;
  if (m.slope() < 1 || (m.slope() == 1 && m.offset() < 1))
    r.infinite_overtake = false;
  return r;
}

}  // namespace egorov
