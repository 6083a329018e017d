#include "egorov/json_io.hpp"

#include <cctype>
#include <cstdlib>
#include <utility>
#include <variant>

#include "egorov/errors.hpp"

namespace egorov {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse_error, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    bad(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::int64_t to_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    bad(std::string(what) + " must be an integer");
  }
  return j.get<std::int64_t>();
}

std::string to_str(const Json& j, const char* what) {
  if (!j.is_string()) {
    bad(std::string(what) + " must be a string");
  }
  return j.get<std::string>();
}

std::int64_t parse_int(const std::string& s, const char* what) {
  if (s.empty()) {
    bad(std::string(what) + " is empty");
  }
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    bad(std::string("invalid ") + what + " '" + s + "'");
  }
  if (pos != s.size()) {
    bad(std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  return parse_rational(to_str(j, "rational value"));
}

Json coords_to_json(const std::vector<Rational>& coords) {
  Json arr = Json::array();
  for (const auto& c : coords) {
    arr.push_back(format_rational(c));
  }
  return arr;
}

}  // namespace

Json space_to_json(const Space& s) {
  Json j;
  if (s.is_qp()) {
    j["kind"] = "qp";
    j["p"] = s.prime().value();
    j["dim"] = s.dim();
  } else {
    j["kind"] = "discrete";
    j["labels"] = s.labels();
  }
  return j;
}

Space space_from_json(const Json& j) {
  std::string kind = to_str(field(j, "kind"), "space kind");
  if (kind == "qp") {
    return Space::qp(Prime(to_int(field(j, "p"), "p")),
                     static_cast<int>(to_int(field(j, "dim"), "dim")));
  }
  if (kind == "discrete") {
    const Json& labels = field(j, "labels");
    if (!labels.is_array()) {
      bad("labels must be an array");
    }
    std::vector<std::string> ls;
    for (const auto& l : labels) {
      ls.push_back(to_str(l, "label"));
    }
    return Space::discrete(std::move(ls));
  }
  bad("unknown space kind '" + kind + "'");
}

Json ring_to_json(const Ring& r) {
  Json j;
  switch (r.kind) {
    case RingKind::rational:
      j["kind"] = "rational";
      break;
    case RingKind::gaussian:
      j["kind"] = "gaussian";
      break;
    case RingKind::intmod:
      j["kind"] = "intmod";
      j["modulus"] = r.modulus.str();
      break;
  }
  return j;
}

Ring ring_from_json(const Json& j) {
  std::string kind =
      j.is_string() ? j.get<std::string>() : to_str(field(j, "kind"), "ring kind");
  if (kind == "rational") {
    return Ring::rational_ring();
  }
  if (kind == "gaussian") {
    return Ring::gaussian_ring();
  }
  if (kind == "intmod") {
    if (j.is_string()) {
      bad("intmod ring needs a modulus field");
    }
    const Json& m = field(j, "modulus");
    if (m.is_number_integer()) {
      return Ring::intmod_ring(BigInt(m.get<std::int64_t>()));
    }
    return Ring::intmod_ring(BigInt(to_str(m, "modulus")));
  }
  bad("unknown ring kind '" + kind + "'");
}

Json ring_elem_to_json(const RingElem& e) {
  switch (e.ring().kind) {
    case RingKind::rational:
      return format_rational(e.rational_value());
    case RingKind::gaussian: {
      Json j;
      j["re"] = format_rational(e.gaussian_value().re);
      j["im"] = format_rational(e.gaussian_value().im);
      return j;
    }
    case RingKind::intmod:
      return e.intmod_value().residue.str();
  }
  bad("unknown ring");
}

RingElem ring_elem_from_json(const Ring& r, const Json& j) {
  switch (r.kind) {
    case RingKind::rational:
      return RingElem::rational(rational_from_json(j));
    case RingKind::gaussian: {
      if (j.is_object()) {
        return RingElem::gaussian(rational_from_json(field(j, "re")),
                                  rational_from_json(field(j, "im")));
      }
      return RingElem::gaussian(rational_from_json(j), Rational(0));
    }
    case RingKind::intmod: {
      if (j.is_number_integer()) {
        return RingElem::intmod(BigInt(j.get<std::int64_t>()), r.modulus);
      }
      return RingElem::intmod(BigInt(to_str(j, "residue")), r.modulus);
    }
  }
  bad("unknown ring");
}

Json integer_map_to_json(const IntegerMap& m) {
  Json j;
  if (m.table_size() > 0) {
    j["table"] = m.table();
  }
  j["tail"] = Json::array({m.slope(), m.offset()});
  return j;
}

IntegerMap integer_map_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) {
      bad("index map tail must be [slope, offset]");
    }
    return IntegerMap::affine(to_int(j[0], "slope"), to_int(j[1], "offset"));
  }
  const Json& tail = field(j, "tail");
  if (!tail.is_array() || tail.size() != 2) {
    bad("index map tail must be [slope, offset]");
  }
  std::vector<std::int64_t> table;
  if (j.contains("table")) {
    const Json& t = j.at("table");
    if (!t.is_array()) {
      bad("index map table must be an array");
    }
    for (const auto& v : t) {
      table.push_back(to_int(v, "table entry"));
    }
  }
  if (table.empty()) {
    return IntegerMap::affine(to_int(tail[0], "slope"), to_int(tail[1], "offset"));
  }
  return IntegerMap::with_table(std::move(table), to_int(tail[0], "slope"),
                                to_int(tail[1], "offset"));
}

Json point_to_json(const Point& x) {
  if (x.is_qp()) {
    return coords_to_json(x.coords());
  }
  return x.label();
}

Point point_from_json(const Space& s, const Json& j) {
  if (s.is_qp()) {
    if (!j.is_array()) {
      bad("coordinate point must be an array");
    }
    std::vector<Rational> coords;
    for (const auto& c : j) {
      coords.push_back(rational_from_json(c));
    }
    Point x = Point::qp(std::move(coords));
    require_in_space(s, x);
    return x;
  }
  Point x = Point::discrete(to_str(j, "point label"));
  require_in_space(s, x);
  return x;
}

Json ball_to_json(const Ball& b) {
  Json j;
  j["center"] = point_to_json(b.center());
  j["gamma"] = b.gamma();
  return j;
}

Ball ball_from_json(const Space& s, const Json& j) {
  return Ball(s, point_from_json(s, field(j, "center")),
              to_int(field(j, "gamma"), "gamma"));
}

namespace {

Json pieces_to_json(const StepFunction& f) {
  Json arr = Json::array();
  for (const auto& piece : f.pieces()) {
    Json pj;
    pj["ball"] = ball_to_json(piece.ball);
    pj["value"] = ring_elem_to_json(piece.value);
    arr.push_back(std::move(pj));
  }
  return arr;
}

StepFunction pieces_from_json(const Space& s, const Ring& r, const Json& j) {
  if (!j.is_array()) {
    bad("pieces must be an array");
  }
  StepFunction out = StepFunction::zero(s, r);
  for (const auto& pj : j) {
    Ball b = ball_from_json(s, field(pj, "ball"));
    RingElem v = ring_elem_from_json(r, field(pj, "value"));
    out = add(out, char_fn(b, v));
  }
  return out;
}

}  // namespace

Json step_function_to_json(const StepFunction& f) {
  Json j;
  j["space"] = space_to_json(f.space());
  j["ring"] = ring_to_json(f.ring());
  j["pieces"] = pieces_to_json(f);
  return j;
}

StepFunction step_function_from_json(const Json& j) {
  Space s = space_from_json(field(j, "space"));
  Ring r = ring_from_json(field(j, "ring"));
  return pieces_from_json(s, r, field(j, "pieces"));
}

namespace {

Json node_to_json(const SequenceFamily& f) {
  Json j;
  if (const auto* c = std::get_if<SequenceFamily::ConstantNode>(&f.node())) {
    j["kind"] = "constant";
    j["pieces"] = pieces_to_json(c->value);
    return j;
  }
  if (const auto* e = std::get_if<SequenceFamily::ExplicitThenNode>(&f.node())) {
    j["kind"] = "explicit_then";
    Json prefix = Json::array();
    for (const auto& entry : e->prefix) {
      prefix.push_back(pieces_to_json(entry));
    }
    j["prefix"] = std::move(prefix);
    j["tail"] = node_to_json(*e->tail);
    return j;
  }
  if (const auto* m =
          std::get_if<SequenceFamily::MonomialIndicatorNode>(&f.node())) {
    j["kind"] = "monomial_indicator";
    Json coeff;
    coeff["unit"] = ring_elem_to_json(m->coeff_unit);
    coeff["exp"] = integer_map_to_json(m->coeff_exp);
    j["coeff"] = std::move(coeff);
    Json center;
    const auto& coords = m->center_base.coords();
    if (coords.size() == 1) {
      center["base"] = format_rational(coords[0]);
    } else {
      center["base"] = coords_to_json(coords);
    }
    center["exp"] = integer_map_to_json(m->center_exp);
    j["center"] = std::move(center);
    j["radius_exp"] = integer_map_to_json(m->radius_exp);
    return j;
  }
  if (const auto* s = std::get_if<SequenceFamily::SumNode>(&f.node())) {
    j["kind"] = "sum";
    j["lhs"] = node_to_json(*s->lhs);
    j["rhs"] = node_to_json(*s->rhs);
    return j;
  }
  if (const auto* p = std::get_if<SequenceFamily::ProdNode>(&f.node())) {
    j["kind"] = "prod";
    j["lhs"] = node_to_json(*p->lhs);
    j["rhs"] = node_to_json(*p->rhs);
    return j;
  }
  const auto& n = std::get<SequenceFamily::NegNode>(f.node());
  j["kind"] = "neg";
  j["arg"] = node_to_json(*n.arg);
  return j;
}

FamilyPtr node_from_json(const Space& s, const Ring& r, const Json& j) {
  std::string kind = to_str(field(j, "kind"), "family kind");
  if (kind == "constant") {
    return SequenceFamily::constant(pieces_from_json(s, r, field(j, "pieces")));
  }
  if (kind == "explicit_then") {
    const Json& pj = field(j, "prefix");
    if (!pj.is_array()) {
      bad("prefix must be an array");
    }
    std::vector<StepFunction> prefix;
    for (const auto& entry : pj) {
      prefix.push_back(pieces_from_json(s, r, entry));
    }
    return SequenceFamily::explicit_then(std::move(prefix),
                                         node_from_json(s, r, field(j, "tail")));
  }
  if (kind == "monomial_indicator") {
    const Json& coeff = field(j, "coeff");
    const Json& center = field(j, "center");
    const Json& base = field(center, "base");
    std::vector<Rational> coords;
    if (base.is_array()) {
      for (const auto& c : base) {
        coords.push_back(rational_from_json(c));
      }
    } else {
      coords.push_back(rational_from_json(base));
    }
    return SequenceFamily::monomial_indicator(
        s, r, ring_elem_from_json(r, field(coeff, "unit")),
        integer_map_from_json(field(coeff, "exp")), Point::qp(std::move(coords)),
        integer_map_from_json(field(center, "exp")),
        integer_map_from_json(field(j, "radius_exp")));
  }
  if (kind == "sum") {
    return SequenceFamily::sum(node_from_json(s, r, field(j, "lhs")),
                               node_from_json(s, r, field(j, "rhs")));
  }
  if (kind == "prod") {
    return SequenceFamily::prod(node_from_json(s, r, field(j, "lhs")),
                                node_from_json(s, r, field(j, "rhs")));
  }
  if (kind == "neg") {
    return SequenceFamily::neg(node_from_json(s, r, field(j, "arg")));
  }
  bad("unknown family kind '" + kind + "'");
}

}  // namespace

Json family_to_json(const FamilyPtr& f) {
  Json j;
  j["space"] = space_to_json(f->space());
  j["ring"] = ring_to_json(f->ring());
  j["family"] = node_to_json(*f);
  return j;
}

FamilyPtr family_from_json(const Json& j) {
  Space s = space_from_json(field(j, "space"));
  Ring r = ring_from_json(field(j, "ring"));
  return node_from_json(s, r, field(j, "family"));
}

namespace {

Json pow_sum_terms_to_json(const PowSum& ps) {
  Json arr = Json::array();
  for (const auto& t : ps.terms()) {
    Json tj;
    tj["unit"] = format_rational(t.unit);
    tj["exp"] = integer_map_to_json(t.exp);
    arr.push_back(std::move(tj));
  }
  return arr;
}

}  // namespace

Json scalar_family_to_json(const ScalarFamily& s) {
  Json j;
  j["ring"] = ring_to_json(s.ring());
  Json prefix = Json::array();
  for (const auto& e : s.prefix()) {
    prefix.push_back(ring_elem_to_json(e));
  }
  j["prefix"] = std::move(prefix);
  Json tail;
  if (std::holds_alternative<ScalarFamily::ZeroTail>(s.tail())) {
    tail["kind"] = "zero";
  } else if (const auto* c = std::get_if<ScalarFamily::ConstantTail>(&s.tail())) {
    tail["kind"] = "constant";
    tail["value"] = ring_elem_to_json(c->value);
  } else if (const auto* m = std::get_if<ScalarFamily::MonomialTail>(&s.tail())) {
    tail["kind"] = "monomial";
    tail["unit"] = ring_elem_to_json(m->unit);
    tail["exp"] = integer_map_to_json(m->exp);
    if (m->exp.table_size() == 0) {
      tail["pretty"] = monomial_expr(m->unit, m->exp);
    }
  } else {
    const auto& sum = std::get<ScalarFamily::SumTail>(s.tail());
    tail["kind"] = "sum";
    switch (s.ring().kind) {
      case RingKind::rational:
        tail["re"] = pow_sum_terms_to_json(sum.value.re());
        break;
      case RingKind::gaussian:
        tail["re"] = pow_sum_terms_to_json(sum.value.re());
        tail["im"] = pow_sum_terms_to_json(sum.value.im());
        break;
      case RingKind::intmod: {
        Json mods = Json::array();
        for (const auto& m : sum.value.mods()) {
          Json mj;
          mj["unit"] = m.unit.str();
          mj["exp"] = integer_map_to_json(m.exp);
          mods.push_back(std::move(mj));
        }
        tail["mods"] = std::move(mods);
        break;
      }
    }
  }
  j["tail"] = std::move(tail);
  j["decided"] = s.tail_decided();
  return j;
}

Json point_family_to_json(const PointFamily& x) {
  Json j;
  j["space"] = space_to_json(x.space());
  Json prefix = Json::array();
  for (const auto& pt : x.prefix()) {
    prefix.push_back(point_to_json(pt));
  }
  j["prefix"] = std::move(prefix);
  Json tail;
  if (const auto* c = std::get_if<PointFamily::ConstantPoint>(&x.tail())) {
    tail["kind"] = "constant";
    tail["value"] = point_to_json(c->value);
  } else {
    const auto& m = std::get<PointFamily::MonomialPoint>(x.tail());
    tail["kind"] = "monomial";
    Json coords = Json::array();
    for (const auto& c : m.coords) {
      Json cj;
      cj["base"] = format_rational(c.base);
      cj["exp"] = integer_map_to_json(c.exp);
      if (c.base != 0 && c.exp.table_size() == 0) {
        cj["pretty"] = monomial_expr(RingElem::rational(c.base), c.exp);
      }
      coords.push_back(std::move(cj));
    }
    tail["coords"] = std::move(coords);
  }
  j["tail"] = std::move(tail);
  return j;
}

PointFamily point_family_from_json(const Json& j) {
  Space s = space_from_json(field(j, "space"));
  std::vector<Point> prefix;
  if (j.contains("prefix")) {
    const Json& pj = j.at("prefix");
    if (!pj.is_array()) {
      bad("prefix must be an array");
    }
    for (const auto& pt : pj) {
      prefix.push_back(point_from_json(s, pt));
    }
  }
  const Json& tail = field(j, "tail");
  std::string kind = to_str(field(tail, "kind"), "tail kind");
  if (kind == "constant") {
    return PointFamily::make(
        s, std::move(prefix),
        PointFamily::ConstantPoint{point_from_json(s, field(tail, "value"))});
  }
  if (kind == "monomial") {
    const Json& cj = field(tail, "coords");
    if (!cj.is_array()) {
      bad("coords must be an array");
    }
    std::vector<PointFamily::CoordMonomial> coords;
    for (const auto& c : cj) {
      coords.push_back({rational_from_json(field(c, "base")),
                        integer_map_from_json(field(c, "exp"))});
    }
    return PointFamily::make(s, std::move(prefix),
                             PointFamily::MonomialPoint{std::move(coords)});
  }
  bad("unknown point family tail kind '" + kind + "'");
}

Json schedule_to_json(const Schedule& s) {
  Json j;
  j["indices"] = integer_map_to_json(s.indices);
  if (s.indices.table_size() == 0) {
    j["pretty_indices"] = map_expr(s.indices);
  }
  if (s.points) {
    j["points"] = point_family_to_json(*s.points);
  }
  return j;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind;
  if (c.ball) {
    j["ball"] = ball_to_json(*c.ball);
  }
  j["note"] = c.note;
  return j;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  if (v.is_proved()) {
    j["verdict"] = "proved";
    j["N"] = v.n();
    j["certificate"] = certificate_to_json(v.certificate());
    return j;
  }
  if (v.is_refuted()) {
    j["verdict"] = "refuted";
    j["schedule"] = schedule_to_json(v.schedule());
    return j;
  }
  j["verdict"] = "unknown";
  j["checked_up_to"] = v.checked_up_to();
  return j;
}

Json separation_report_to_json(const SeparationReport& r) {
  Json j;
  j["p"] = r.p.value();
  j["phi"] = integer_map_to_json(r.phi);
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  Json standard = Json::array();
  for (const auto& rec : r.standard_records) {
    Json rj;
    rj["point"] = point_to_json(rec.x);
    rj["verdict"] = verdict_to_json(rec.agree);
    standard.push_back(std::move(rj));
  }
  j["standard_records"] = std::move(standard);
  Json generalized = Json::array();
  for (const auto& rec : r.generalized_records) {
    Json rj;
    rj["points"] = point_family_to_json(rec.x);
    rj["lhs"] = scalar_family_to_json(rec.lhs);
    rj["rhs"] = scalar_family_to_json(rec.rhs);
    rj["verdict"] = verdict_to_json(rec.equal);
    generalized.push_back(std::move(rj));
  }
  j["generalized_records"] = std::move(generalized);
  j["tail_outside_both_supports"] = r.tail_outside_both_supports;
  j["standard_disagreements"] = r.standard_disagreements;
  j["conclusion"] = r.conclusion;
  return j;
}

Json counterexample_report_to_json(const CounterexampleReport& r) {
  Json j;
  j["p"] = r.p.value();
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json rj;
    rj["alpha"] = format_rational(rec.alpha);
    rj["verdict"] = verdict_to_json(rec.zero);
    records.push_back(std::move(rj));
  }
  j["records"] = std::move(records);
  j["on_unit_ball"] = verdict_to_json(r.on_unit_ball);
  j["global"] = verdict_to_json(r.global);
  j["schedule_checked"] = r.schedule_checked;
  j["schedule_values_unit"] = r.schedule_values_unit;
  j["conclusion"] = r.conclusion;
  return j;
}

std::string map_expr(const IntegerMap& m) {
  std::string out;
  if (m.table_size() > 0) {
    out += "[";
    for (std::size_t i = 0; i < m.table().size(); ++i) {
      if (i > 0) {
        out += ",";
      }
      out += std::to_string(m.table()[i]);
    }
    out += "] then ";
  }
  const std::int64_t a = m.slope();
  const std::int64_t b = m.offset();
  if (a == 0) {
    return out + std::to_string(b);
  }
  std::string lin = a == 1 ? "k" : (a == -1 ? "-k" : std::to_string(a) + "k");
  if (b > 0) {
    lin += "+" + std::to_string(b);
  } else if (b < 0) {
    lin += std::to_string(b);
  }
  return out + lin;
}

std::string monomial_expr(const RingElem& unit, const IntegerMap& exp) {
  std::string e = map_expr(exp);
  bool simple = e == "k";
  if (!simple) {
    simple = !e.empty() && e.find_first_not_of("0123456789") == std::string::npos;
  }
  std::string pw = "p^" + (simple ? e : "(" + e + ")");
  std::string u = format_ring_elem(unit);
  if (u == "1") {
    return pw;
  }
  if (u == "-1") {
    return "-" + pw;
  }
  return u + "*" + pw;
}

IntegerMap parse_map_flag(const std::string& text) {
  std::vector<std::string> parts = split(text, ';');
  if (parts.size() > 2) {
    bad("index map flag must look like 'a,b' or 't1,t2;a,b'");
  }
  std::string tail_part = parts.back();
  std::vector<std::string> ab = split(tail_part, ',');
  if (ab.size() != 2) {
    bad("index map tail must be 'slope,offset'");
  }
  std::int64_t a = parse_int(ab[0], "slope");
  std::int64_t b = parse_int(ab[1], "offset");
  std::vector<std::int64_t> table;
  if (parts.size() == 2 && !parts[0].empty()) {
    for (const auto& t : split(parts[0], ',')) {
      table.push_back(parse_int(t, "table entry"));
    }
  }
  if (table.empty()) {
    return IntegerMap::affine(a, b);
  }
  return IntegerMap::with_table(std::move(table), a, b);
}

Point parse_point_flag(const Space& s, const std::string& text) {
  if (!s.is_qp()) {
    Point x = Point::discrete(text);
    require_in_space(s, x);
    return x;
  }
  std::vector<std::string> parts = split(text, ',');
  if (static_cast<int>(parts.size()) != s.dim()) {
    bad("point has wrong number of coordinates");
  }
  std::vector<Rational> coords;
  for (const auto& part : parts) {
    coords.push_back(parse_rational_shorthand(s.prime(), part));
  }
  return Point::qp(std::move(coords));
}

Ball parse_ball_flag(const Space& s, const std::string& text) {
  std::size_t pos = text.rfind(':');
  if (pos == std::string::npos) {
    bad("ball flag must look like 'center:gamma'");
  }
  Point center = parse_point_flag(s, text.substr(0, pos));
  std::int64_t gamma = parse_int(text.substr(pos + 1), "gamma");
  return Ball(s, std::move(center), gamma);
}

}  // namespace egorov
