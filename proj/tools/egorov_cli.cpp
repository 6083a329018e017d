#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egorov/json_io.hpp"

namespace {

using egorov::Json;

struct Options {
  std::string family_a;
  std::string family_b;
  std::string point;
  std::string point_family;
  std::string ball;
  std::string phi;
  std::int64_t p = 0;
  std::int64_t k = 1;
  std::int64_t bound = egorov::kDefaultBound;
  std::int64_t samples = 100;
  std::uint64_t seed = 0;
  bool require_decision = false;
  bool pretty = false;
};

egorov::Prime prime_of(const Options& o) {
  if (o.p == 0) {
    egorov::fail(egorov::Errc::parse_error, "--p is required here");
  }
  return egorov::Prime(o.p);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    egorov::fail(egorov::Errc::parse_error, "cannot open '" + path + "'");
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    egorov::fail(egorov::Errc::parse_error, "invalid JSON in '" + path + "'");
  }
  return j;
}

egorov::FamilyPtr load_family(const std::string& name, const Options& o) {
  if (name == "builtin:counterexample") {
    return egorov::counterexample_family(prime_of(o));
  }
  if (name == "builtin:delta") {
    return egorov::delta_embedding(prime_of(o));
  }
  if (name == "builtin:phi-delta") {
    if (o.phi.empty()) {
      egorov::fail(egorov::Errc::parse_error,
                   "builtin:phi-delta requires --phi");
    }
    return egorov::phi_delta(prime_of(o), egorov::parse_map_flag(o.phi));
  }
  if (name.rfind("builtin:", 0) == 0) {
    egorov::fail(egorov::Errc::parse_error,
                 "unknown builtin family '" + name + "'");
  }
  return egorov::family_from_json(read_json_file(name));
}

egorov::PointFamily load_point_family(const std::string& name,
                                      const Options& o) {
  if (name == "builtin:x0") {
    return egorov::witness_x0(prime_of(o));
  }
  if (name.rfind("builtin:", 0) == 0) {
    egorov::fail(egorov::Errc::parse_error,
                 "unknown builtin point family '" + name + "'");
  }
  return egorov::point_family_from_json(read_json_file(name));
}

void print_json(const Json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("EGOROV_BOUND")) {
    try {
      o.bound = std::stoll(env);
    } catch (const std::exception&) {
      Json err;
      err["error"] = {{"code", "parse_error"},
                      {"message", "EGOROV_BOUND is not an integer"}};
      std::cerr << err.dump() << "\n";
      return 1;
    }
  }

  CLI::App app{"exact p-adic generalized functions: evaluation and verdicts"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--p", o.p, "prime for builtin objects and shorthands");
    cmd->add_option("--phi", o.phi,
                    "radius index map as 'table;slope,offset'");
    cmd->add_option("--bound", o.bound, "cap reported by undecided verdicts");
    cmd->add_flag("--require-decision", o.require_decision,
                  "exit 2 if any verdict is unknown");
    cmd->add_flag("--pretty", o.pretty, "indent JSON output");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one family member");
  eval->add_option("family", o.family_a, "family JSON file or builtin:name")
      ->required();
  eval->add_option("--k", o.k, "member index")->required();
  eval->add_option("--point", o.point, "evaluation point")->required();
  add_common(eval);

  CLI::App* pv = app.add_subcommand("pointvalue", "values at a fixed point");
  pv->add_option("family", o.family_a)->required();
  pv->add_option("--point", o.point)->required();
  add_common(pv);

  CLI::App* neg = app.add_subcommand(
      "negligible", "decide eventual vanishing, on a ball or everywhere");
  neg->add_option("family", o.family_a)->required();
  neg->add_option("--ball", o.ball, "restriction ball as center:gamma");
  add_common(neg);

  CLI::App* eq = app.add_subcommand("equal", "compare two families");
  eq->add_option("lhs", o.family_a)->required();
  eq->add_option("rhs", o.family_b)->required();
  add_common(eq);

  CLI::App* gp =
      app.add_subcommand("gpoint-eval", "values along a point family");
  gp->add_option("family", o.family_a)->required();
  gp->add_option("--point-family", o.point_family,
                 "point family JSON file or builtin:x0")
      ->required();
  add_common(gp);

  CLI::App* cx =
      app.add_subcommand("counterexample", "zero point values, nonzero class");
  cx->add_option("--samples", o.samples, "number of sampled points");
  cx->add_option("--seed", o.seed, "sampling seed");
  add_common(cx);

  CLI::App* sep = app.add_subcommand(
      "separate", "standard points agree, a generalized point differs");
  sep->add_option("--samples", o.samples, "number of sampled points");
  sep->add_option("--seed", o.seed, "sampling seed");
  add_common(sep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = {{"code", "parse_error"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }

  try {
    std::vector<egorov::Verdict> verdicts;

    if (eval->parsed()) {
      egorov::FamilyPtr f = load_family(o.family_a, o);
      egorov::Point x = egorov::parse_point_flag(f->space(), o.point);
      print_json(egorov::ring_elem_to_json(
                     egorov::evaluate(egorov::nth(f, o.k), x)),
                 o.pretty);
    } else if (pv->parsed()) {
      egorov::FamilyPtr f = load_family(o.family_a, o);
      egorov::Point x = egorov::parse_point_flag(f->space(), o.point);
      egorov::ScalarFamily values = egorov::point_value(f, x);
      egorov::Verdict v = egorov::scalar_is_zero(values);
      Json out;
      out["values"] = egorov::scalar_family_to_json(values);
      out["verdict"] = egorov::verdict_to_json(v);
      verdicts.push_back(std::move(v));
      print_json(out, o.pretty);
    } else if (neg->parsed()) {
      egorov::FamilyPtr f = load_family(o.family_a, o);
      egorov::Verdict v =
          o.ball.empty()
              ? egorov::is_negligible_global(f, o.bound)
              : egorov::is_negligible_on(
                    f, egorov::parse_ball_flag(f->space(), o.ball), o.bound);
      print_json(egorov::verdict_to_json(v), o.pretty);
      verdicts.push_back(std::move(v));
    } else if (eq->parsed()) {
      egorov::GeneralizedFunction u(load_family(o.family_a, o));
      egorov::GeneralizedFunction w(load_family(o.family_b, o));
      egorov::Verdict v = egorov::gf_equal(u, w, o.bound);
      print_json(egorov::verdict_to_json(v), o.pretty);
      verdicts.push_back(std::move(v));
    } else if (gp->parsed()) {
      egorov::FamilyPtr f = load_family(o.family_a, o);
      egorov::PointFamily x = load_point_family(o.point_family, o);
      egorov::ScalarFamily values = egorov::eval_at_gpoint(f, x);
      egorov::Verdict v = egorov::scalar_is_zero(values);
      Json out;
      out["values"] = egorov::scalar_family_to_json(values);
      out["verdict"] = egorov::verdict_to_json(v);
      verdicts.push_back(std::move(v));
      print_json(out, o.pretty);
    } else if (cx->parsed()) {
      egorov::CounterexampleReport report =
          egorov::counterexample_report(prime_of(o), o.samples, o.seed);
      print_json(egorov::counterexample_report_to_json(report), o.pretty);
      for (auto& rec : report.records) {
        verdicts.push_back(std::move(rec.zero));
      }
      verdicts.push_back(std::move(report.on_unit_ball));
      verdicts.push_back(std::move(report.global));
    } else if (sep->parsed()) {
      if (o.phi.empty()) {
        egorov::fail(egorov::Errc::parse_error, "separate requires --phi");
      }
      egorov::SeparationReport report = egorov::separation_report(
          prime_of(o), egorov::parse_map_flag(o.phi), o.samples, o.seed);
      print_json(egorov::separation_report_to_json(report), o.pretty);
      for (auto& rec : report.standard_records) {
        verdicts.push_back(std::move(rec.agree));
      }
      for (auto& rec : report.generalized_records) {
        verdicts.push_back(std::move(rec.equal));
      }
    }

    if (o.require_decision) {
      for (const auto& v : verdicts) {
        if (v.is_unknown()) {
          return 2;
        }
      }
    }
    return 0;
  } catch (const egorov::Error& e) {
    Json err;
    err["error"] = {{"code", egorov::errc_name(e.code())},
                    {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
