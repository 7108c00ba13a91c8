#include "trep/json_io.hpp"

namespace trep {

namespace {

Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw ValidationError("malformed rational '" + s + "'");
  }
}

}  // namespace

nlohmann::json coeff_to_json(const Coeff& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, g] : c.terms()) {
    terms.push_back({{"m", m},
                     {"a", rational_to_string(g.a())},
                     {"b", rational_to_string(g.b())},
                     {"c", rational_to_string(g.c())},
                     {"d", rational_to_string(g.d())}});
  }
  return terms;
}

Coeff coeff_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("coefficient JSON must be an array of terms");
  Coeff acc;
  for (const auto& t : j) {
    int m = t.at("m").get<int>();
    GaussSqrt2 g(QSqrt2(rational_from_string(t.at("a").get<std::string>()),
                        rational_from_string(t.at("b").get<std::string>())),
                 QSqrt2(rational_from_string(t.at("c").get<std::string>()),
                        rational_from_string(t.at("d").get<std::string>())));
    acc = acc + Coeff::monomial(m, g);
  }
  return acc;
}

nlohmann::json step_to_json(const StepFunction& f) {
  nlohmann::json cuts = nlohmann::json::array();
  for (const auto& c : f.cuts()) cuts.push_back(c.str());
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : f.values()) values.push_back(coeff_to_json(v));
  return {{"cuts", cuts}, {"values", values}};
}

StepFunction step_from_json(const nlohmann::json& j) {
  std::vector<Dyadic> cuts;
  for (const auto& c : j.at("cuts")) {
    auto d = Dyadic::from_rational(rational_from_string(c.get<std::string>()));
    if (!d) throw ValidationError("non-dyadic cut in step JSON");
    cuts.push_back(*d);
  }
  std::vector<Coeff> values;
  for (const auto& v : j.at("values")) values.push_back(coeff_from_json(v));
  return StepFunction::from_pieces(std::move(cuts), std::move(values));
}

}  // namespace trep
