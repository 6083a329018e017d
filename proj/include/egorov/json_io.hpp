#pragma once

#include <string>

#include <json.hpp>

#include "egorov/constructions.hpp"

namespace egorov {

using Json = nlohmann::ordered_json;

Json space_to_json(const Space& s);
Space space_from_json(const Json& j);

Json ring_to_json(const Ring& r);
Ring ring_from_json(const Json& j);

Json ring_elem_to_json(const RingElem& e);
RingElem ring_elem_from_json(const Ring& r, const Json& j);

Json integer_map_to_json(const IntegerMap& m);
IntegerMap integer_map_from_json(const Json& j);

Json point_to_json(const Point& x);
Point point_from_json(const Space& s, const Json& j);

Json ball_to_json(const Ball& b);
Ball ball_from_json(const Space& s, const Json& j);

Json step_function_to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);

Json family_to_json(const FamilyPtr& f);
FamilyPtr family_from_json(const Json& j);

Json scalar_family_to_json(const ScalarFamily& s);

Json point_family_to_json(const PointFamily& x);
PointFamily point_family_from_json(const Json& j);

Json schedule_to_json(const Schedule& s);
Json certificate_to_json(const Certificate& c);
Json verdict_to_json(const Verdict& v);

Json separation_report_to_json(const SeparationReport& r);
Json counterexample_report_to_json(const CounterexampleReport& r);

// Rendered index expressions such as "k", "2k+1", or "p^(k+1)".
std::string map_expr(const IntegerMap& m);
std::string monomial_expr(const RingElem& unit, const IntegerMap& exp);

// Command-line shorthands.
IntegerMap parse_map_flag(const std::string& text);          // "t1,t2;a,b"
Point parse_point_flag(const Space& s, const std::string& text);
Ball parse_ball_flag(const Space& s, const std::string& text);  // "center:gamma"

}  // namespace egorov
