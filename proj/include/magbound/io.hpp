#pragma once

#include "magbound/acceptance.hpp"
#include "magbound/bch.hpp"
#include "magbound/convexity.hpp"
#include "magbound/kernels.hpp"
#include "magbound/magnus.hpp"
#include "magbound/ncpoly.hpp"
#include "magbound/specrad.hpp"
#include "magbound/umqnorm.hpp"

#include <json.hpp>

#include <string>

namespace magbound {

inline constexpr const char* kSchemaVersion = "magbound/1";

// Number rounded to 12 significant digits; non-finite values become strings.
nlohmann::json num_json(double x);

// Parses sums like "Y1234 - 1/2*Y2143 + 3 Y{10}Y2": letters after Y are single digits, braces allow more.
NCPolyQ parse_ncpoly(const std::string& text);

nlohmann::json enclosure_json(const Enclosure& e);
// {"degree": k, "terms": [{"word": [...], "coeff": "num/den"}]}, words in lexicographic order.
nlohmann::json ncpoly_json(const NCPolyQ& p);
// Accepts the form above or a bare term array; coeffs may be strings or numbers.
NCPolyQ ncpoly_from_json(const nlohmann::json& j);
nlohmann::json ratpoly_json(const RatPoly& p);  // ascending coefficients as "num/den"
nlohmann::json certificate_json(const NormResult& r);
nlohmann::json radius_json(const RadiusResult& r, bool with_eigvec = false);
nlohmann::json bound_json(const BoundReport& r);
nlohmann::json sample_json(const SampleReport& r);
nlohmann::json bch_gain_json(const BchGain& g);
nlohmann::json criterion_json(const CriterionResult& r);

// Wraps a payload with the schema tag and command name.
nlohmann::json envelope(const std::string& command, nlohmann::json payload);

}  // namespace magbound
