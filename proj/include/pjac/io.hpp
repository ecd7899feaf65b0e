#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pjac/certify.hpp"
#include "pjac/cpoly.hpp"
#include "pjac/critical.hpp"
#include "pjac/recur.hpp"

namespace pjac::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// Complex values are [re, im] pairs; polynomials are coefficient arrays,
// lowest degree first. Non-finite reals become null.
json to_json(double x);
json to_json(cplx z);
json to_json(const CPoly& p);
json to_json(const std::vector<cplx>& zs);

cplx complex_from_json(const json& j);

/// {"period", "alpha", "beta", "convention"}. beta may be omitted (all 1),
/// convention defaults to recurrence-minus. Throws InputError.
CoefficientSet coefficients_from_json(const json& j);
CoefficientSet load_coefficients(const std::filesystem::path& path);
json coefficients_to_json(const CoefficientSet& c);

json critical_value_json(const CriticalValue& cv);
json certificate_json(const Certificate& c);

/// Shortest round-trip decimal form, used by the table and CSV writers.
std::string format_double(double x);
std::string format_complex(cplx z);

}  // namespace pjac::io
