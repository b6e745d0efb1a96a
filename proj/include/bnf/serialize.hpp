#pragma once

#include <string>

#include <json.hpp>

#include "bnf/builders.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/frequency.hpp"
#include "bnf/measure.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

using Json = nlohmann::json;

// All encodings round-trip doubles bit-exactly (shortest-representation
// printing on write, exact parse on read).

Json to_json(const HomogeneousPolynomial& p);
HomogeneousPolynomial polynomial_from_json(const Json& j);

Json to_json(const PolynomialFamily& f);
PolynomialFamily family_from_json(const Json& j);

Json to_json(const FrequencyModel& m);
FrequencyModel frequency_from_json(const Json& j);

Json to_json(const NonlinearitySpec& s);
NonlinearitySpec nonlinearity_from_json(const Json& j);

Json to_json(const Certificate& c);
Json to_json(const NormalFormOutcome& o);
NormalFormOutcome outcome_from_json(const Json& j);

Json to_json(const MeasureReport& r);
Json to_json(const StabilityReport& r);
Json to_json(const PlannerSchedule& s);

std::string certificate_csv(const Certificate& c);

Json load_json(const std::string& path);           // throws on bad file
void save_json(const Json& j, const std::string& path);

}  // namespace bnf
