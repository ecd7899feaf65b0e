#include "pjac/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "pjac/error.hpp"

namespace pjac::io {

json to_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json to_json(cplx z) { return json::array({to_json(z.real()), to_json(z.imag())}); }

json to_json(const CPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const std::vector<cplx>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back(to_json(z));
  return out;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex numbers must be [re, im] pairs, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

std::vector<cplx> complex_list(const json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("field '") + field + "' must be a list");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

}  // namespace

CoefficientSet coefficients_from_json(const json& j) {
  if (!j.is_object()) throw InputError("coefficient document must be a JSON object");
  if (!j.contains("alpha")) throw InputError("coefficient document has no 'alpha' field");
  auto alpha = complex_list(j.at("alpha"), "alpha");
  std::vector<cplx> beta(alpha.size(), cplx{1.0});
  if (j.contains("beta")) beta = complex_list(j.at("beta"), "beta");
  if (j.contains("period")) {
    if (!j.at("period").is_number_integer() || j.at("period").get<long>() != static_cast<long>(alpha.size()))
      throw InputError("'period' must be an integer equal to the length of 'alpha'");
  }
  Convention conv = Convention::RecurrenceMinus;
  if (j.contains("convention")) {
    if (!j.at("convention").is_string()) throw InputError("'convention' must be a string");
    conv = parse_convention(j.at("convention").get<std::string>());
  }
  return CoefficientSet(std::move(alpha), std::move(beta), conv);
}

CoefficientSet load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open coefficient file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed coefficient file '" + path.string() + "': " + e.what());
  }
  return coefficients_from_json(j);
}

json coefficients_to_json(const CoefficientSet& c) {
  return {{"period", c.period()},
          {"alpha", to_json(c.alphas())},
          {"beta", to_json(c.betas())},
          {"convention", to_string(Convention::RecurrenceMinus)}};
}

json critical_value_json(const CriticalValue& cv) {
  return {{"value", to_json(cv.value)}, {"source", cv.source()}, {"multiplicity", cv.multiplicity}};
}

json certificate_json(const Certificate& c) {
  json j = {{"value", to_json(c.mu)},
            {"verdict", to_string(c.verdict)},
            {"norm_sq", to_json(c.norm_sq)},
            {"z_minus", to_json(c.z_minus)},
            {"z_plus", to_json(c.z_plus)},
            {"pn_at_mu", to_json(c.pn_at_mu)},
            {"max_growth", to_json(c.max_growth())},
            {"diagnostics", c.diagnostics}};
  if (!c.source.empty()) {
    j["source"] = c.source;
    j["multiplicity"] = c.multiplicity;
  }
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
  std::string s = format_double(z.real());
  s += z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+";
  s += format_double(std::abs(z.imag()));
  s += "i";
  return s;
}

}  // namespace pjac::io
