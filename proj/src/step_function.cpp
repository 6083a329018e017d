#include "egorov/step_function.hpp"

#include <algorithm>
#include <utility>

namespace egorov {

namespace {

void require_compatible(const StepFunction& f, const StepFunction& g) {
  if (f.space() != g.space())
    fail(Errc::mixed_spaces, "step functions live on different spaces");
  if (f.ring() != g.ring())
    fail(Errc::mixed_rings, "step functions take values in different rings");
}

BigInt sibling_count(const Space& s) {
  if (s.is_discrete()) return BigInt(s.labels().size());
  return pow_int(s.prime().big(), static_cast<std::uint64_t>(s.dim()));
}

// Collapse every complete equal-valued set of sibling balls into its parent,
// repeating until no group collapses.
void merge_siblings(const Space& s, std::vector<StepFunction::Piece>& pieces) {
  const BigInt expected = sibling_count(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pieces.size() && !changed; ++i) {
      const std::int64_t g = pieces[i].ball.gamma();
      if (s.is_discrete() && g != 1) continue;
      const Ball parent(s, pieces[i].ball.center(), g - 1);
      std::vector<std::size_t> group;
      bool same_value = true;
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        if (pieces[j].ball.gamma() != g) continue;
        if (Ball(s, pieces[j].ball.center(), g - 1) != parent) continue;
        group.push_back(j);
        if (pieces[j].value != pieces[i].value) same_value = false;
      }
      if (!same_value || BigInt(group.size()) != expected) continue;
      const RingElem value = pieces[i].value;
      for (auto it = group.rbegin(); it != group.rend(); ++it)
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(*it));
      pieces.push_back({parent, value});
      changed = true;
    }
  }
}

// Add (b, v) into a disjoint piece list, splitting only the pieces that
// actually overlap it so the common refinement stays local.
void insert_piece(const Space& s, std::vector<StepFunction::Piece>& acc,
                  const Ball& b, const RingElem& v) {
  if (v.is_zero()) return;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    switch (ball_relation(b, acc[i].ball)) {
      case BallRel::disjoint:
        continue;
      case BallRel::equal: {
        RingElem w = ring_add(acc[i].value, v);
        if (w.is_zero())
          acc.erase(acc.begin() + static_cast<std::ptrdiff_t>(i));
        else
          acc[i].value = std::move(w);
        return;
      }
      case BallRel::first_inside_second: {
        const RingElem held = acc[i].value;
        const std::vector<Ball> children = split_ball(acc[i].ball);
        acc.erase(acc.begin() + static_cast<std::ptrdiff_t>(i));
        for (const Ball& child : children) acc.push_back({child, held});
        insert_piece(s, acc, b, v);
        return;
      }
      case BallRel::second_inside_first: {
        for (const Ball& child : split_ball(b)) insert_piece(s, acc, child, v);
        return;
      }
    }
  }
  acc.push_back({b, v});
}

}  // namespace

StepFunction StepFunction::zero(const Space& s, const Ring& r) {
  return StepFunction(s, r);
}

StepFunction StepFunction::from_disjoint(const Space& s, const Ring& r,
                                         std::vector<Piece> pieces) {
  std::erase_if(pieces, [](const Piece& p) { return p.value.is_zero(); });
  merge_siblings(s, pieces);
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return ball_less(a.ball, b.ball);
  });
  StepFunction f(s, r);
  f.pieces_ = std::move(pieces);
  return f;
}

StepFunction char_fn(const Ball& b, const RingElem& theta) {
  return StepFunction::from_disjoint(b.space(), theta.ring(),
                                     {{b, theta}});
}

RingElem evaluate(const StepFunction& f, const Point& x) {
  require_in_space(f.space(), x);
  for (const auto& piece : f.pieces())
    if (in_ball(x, piece.ball)) return piece.value;
  return RingElem::zero(f.ring());
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  require_compatible(f, g);
  std::vector<StepFunction::Piece> acc = f.pieces();
  for (const auto& piece : g.pieces())
    insert_piece(f.space(), acc, piece.ball, piece.value);
  return StepFunction::from_disjoint(f.space(), f.ring(), std::move(acc));
}

StepFunction mul(const StepFunction& f, const StepFunction& g) {
  require_compatible(f, g);
  std::vector<StepFunction::Piece> out;
  for (const auto& a : f.pieces()) {
    for (const auto& b : g.pieces()) {
      const BallRel rel = ball_relation(a.ball, b.ball);
      if (rel == BallRel::disjoint) continue;
      const Ball& inner =
          rel == BallRel::second_inside_first ? b.ball : a.ball;
      RingElem v = ring_mul(a.value, b.value);
      if (!v.is_zero()) out.push_back({inner, std::move(v)});
    }
  }
  return StepFunction::from_disjoint(f.space(), f.ring(), std::move(out));
}

StepFunction neg(const StepFunction& f) {
  std::vector<StepFunction::Piece> out = f.pieces();
  for (auto& piece : out) piece.value = ring_neg(piece.value);
  return StepFunction::from_disjoint(f.space(), f.ring(), std::move(out));
}

StepFunction restrict_to(const StepFunction& f, const Ball& k) {
  if (f.space() != k.space())
    fail(Errc::mixed_spaces, "restriction ball lives in another space");
  std::vector<StepFunction::Piece> out;
  for (const auto& piece : f.pieces()) {
    switch (ball_relation(piece.ball, k)) {
      case BallRel::disjoint:
        break;
      case BallRel::equal:
      case BallRel::first_inside_second:
        out.push_back(piece);
        break;
      case BallRel::second_inside_first:
        out.push_back({k, piece.value});
        break;
    }
  }
  return StepFunction::from_disjoint(f.space(), f.ring(), std::move(out));
}

Constancy constancy_exponent(const StepFunction& f, const Point& x) {
  if (f.space().is_discrete())
    fail(Errc::not_supported, "constancy exponents need a coordinate space");
  require_in_space(f.space(), x);
  if (f.pieces().empty()) return Constancy::everywhere();
  bool first = true;
  std::int64_t g = 0;
  for (const auto& piece : f.pieces()) {
    const ValuationExp d = distance_exp(f.space(), x, piece.ball.center());
    // Constant on Ball(x, m) needs each piece either to contain it
    // (m >= piece gamma when x is a member) or to miss it entirely
    // (m > distance exponent when x is outside).
    const std::int64_t need =
        d >= ValuationExp::finite(piece.ball.gamma())
            ? piece.ball.gamma()
            : d.value() + 1;
    g = first ? need : std::max(g, need);
    first = false;
  }
  return Constancy::at(g);
}

}  // namespace egorov
