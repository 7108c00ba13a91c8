#pragma once

#include <json.hpp>

#include "trep/stepfun.hpp"

namespace trep {

// Exact JSON forms: rationals as strings, one term object per phase degree.
nlohmann::json coeff_to_json(const Coeff& c);
Coeff coeff_from_json(const nlohmann::json& j);

nlohmann::json step_to_json(const StepFunction& f);
StepFunction step_from_json(const nlohmann::json& j);

}  // namespace trep
