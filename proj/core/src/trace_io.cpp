#include <nlohmann/json.hpp>

#include "medial/error.hpp"
#include "medial/rewrite.hpp"

namespace medial {

nlohmann::json trace_to_json(const DerivationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& st : trace.steps) {
    nlohmann::json subst = nlohmann::json::object();
    for (const auto& [v, t] : st.substitution) subst[v] = to_string(t);
    steps.push_back({{"pos", st.position.str()},
                     {"rule", st.rule},
                     {"dir", st.direction == Direction::Forward ? "fwd" : "rev"},
                     {"subst", std::move(subst)}});
  }
  return {{"initial", to_string(trace.initial)}, {"steps", std::move(steps)}};
}

DerivationTrace trace_from_json(const nlohmann::json& j) {
  try {
    DerivationTrace out{parse_term(j.at("initial").get<std::string>()), {}};
    for (const auto& s : j.at("steps")) {
      TraceStep st;
      st.position = Position::parse(s.at("pos").get<std::string>());
      st.rule = s.at("rule").get<std::string>();
      const auto dir = s.at("dir").get<std::string>();
      if (dir == "fwd") st.direction = Direction::Forward;
      else if (dir == "rev") st.direction = Direction::Reverse;
      else throw InvalidArgument("step direction must be \"fwd\" or \"rev\", got \"" + dir + "\"");
      for (const auto& [v, t] : s.at("subst").items()) {
        if (!is_variable_name(v)) throw InvalidArgument("illegal variable name '" + v + "' in substitution");
        st.substitution.emplace(v, parse_term(t.get<std::string>()));
      }
      out.steps.push_back(std::move(st));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed trace: ") + e.what());
  }
}

std::string trace_to_string(const DerivationTrace& trace, int indent) { return trace_to_json(trace).dump(indent); }

DerivationTrace parse_trace(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("trace is not valid JSON: ") + e.what(), e.byte);
  }
  return trace_from_json(j);
}

}  // namespace medial
