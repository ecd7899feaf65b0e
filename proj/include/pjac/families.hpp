#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pjac/certify.hpp"
#include "pjac/cpoly.hpp"
#include "pjac/recur.hpp"

namespace pjac {

/// Closed-form data a family is known to satisfy. Every field is optional.
struct FamilyExpectations {
  std::optional<CPoly> pn;
  std::optional<CPoly> qn;
  /// (n, φ_n) pairs from the tabulated polynomials
  std::vector<std::pair<int, CPoly>> phi_table;
  /// Δ_0 up to a nonzero constant factor
  std::optional<CPoly> critical_poly;
  std::vector<Root> critical_roots;
  std::vector<cplx> eigenvalues;
  /// ‖X_μ‖² per eigenvalue; NaN where no value is known
  std::vector<double> norms_sq;
  /// known transcription problems in the tabulated data
  std::vector<std::string> errata;
};

struct FamilySpec {
  std::string name;
  std::vector<double> params;
  CoefficientSet coeffs;
  FamilyExpectations expect;
};

/**
 * Built-in coefficient families.
 *
 *   elementary-3, elementary-4, elementary-5  no parameters
 *   parametric                                one real α in [-1, 1]
 *   generic-n3                                three reals (real α_k) or six
 *                                             reals (re, im pairs)
 *
 * Throws InputError on an unknown name or bad parameters.
 */
FamilySpec family(std::string_view name, std::span<const double> params = {});

std::vector<std::string> family_names();

// Parametric family, α ∈ [-1, 1].
double alpha_tilde1_sq(double alpha);  // (27/4) α² (1 - α²)
double alpha_tilde2_sq(double alpha);  // (3/4) (1 - α²) (9α² - 4)
double f_of_alpha(double alpha);       // 3α² + 3α - 2
std::array<cplx, 3> parametric_coefficients(double alpha);
/// Closed-form roots of φ_2(·; α): μ1 (+ branch), μ2 (- branch).
std::pair<cplx, cplx> parametric_mu12(double alpha);
/// Closed-form roots of Q_3(·; α): ±α̃1/√3.
std::pair<cplx, cplx> parametric_mu34(double alpha);

/// Unique positive root of λ³ - α̃1²(α) λ - 2 = 0.
double lambda_of_alpha(double alpha);
double lambda_max();

struct Thresholds {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  /// Crossings of |μ_k(α) - a_0(α)| < 1 located by bisection.
  std::array<double, 3> bisected{};
  bool verified = false;
};

Thresholds thresholds();

struct AlphaAnalysis {
  double alpha = 0.0;
  std::pair<cplx, cplx> mu12;
  std::pair<cplx, cplx> mu34;
  double lambda = 0.0;
  /// certifier verdicts for μ1..μ4
  std::array<Verdict, 4> verdicts{};
  std::array<bool, 4> eigenvalue_flags{};
  /// max distance from a closed-form μ_k to the nearest computed critical value
  double closed_form_deviation = 0.0;
  Thresholds thresholds;
};

/// Closed forms, λ(α) and certifier verdicts for the parametric family.
/// Throws InputError for α outside [-1, 1].
AlphaAnalysis parametric_analysis(double alpha, double tol = kDefaultRootTol);

}  // namespace pjac
