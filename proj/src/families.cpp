#include "pjac/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pjac/critical.hpp"
#include "pjac/error.hpp"

namespace pjac {

using namespace std::complex_literals;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);
const CPoly kX = CPoly::monomial(1.0, 1);

CPoly xpow(int k) { return CPoly::monomial(1.0, k); }
CPoly c(cplx v) { return CPoly::constant(v); }

// Coincident closed-form roots (e.g. μ3 = μ4 = 0 at α = 0) become one entry.
std::vector<Root> merged(const std::vector<Root>& in) {
  std::vector<Root> out;
  for (const auto& r : in) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Root& o) {
      return std::abs(o.value - r.value) <= 1e-9 * (1.0 + std::abs(r.value));
    });
    if (it == out.end()) out.push_back(r);
    else it->multiplicity += r.multiplicity;
  }
  return out;
}

FamilySpec elementary3() {
  const cplx a = 1i * kSqrt3;
  FamilySpec f{"elementary-3", {}, CoefficientSet({a, -a, 0.0}), {}};
  auto& e = f.expect;
  const CPoly phi1 = kX - c(a);
  const CPoly phi2 = xpow(2) + c(2.0);
  e.phi_table = {{0, c(1.0)}, {1, phi1},       {2, phi2},
                 {3, kX * phi2 - phi1}, {4, xpow(3) * phi1 + c(1.0)}, {5, xpow(3) * phi2}};
  e.pn = xpow(3);
  e.qn = CPoly::monomial(3.0, 2);
  e.critical_poly = 3.0 * (xpow(2) * phi2);
  e.critical_roots = {{0.0, 2}, {1i * kSqrt2, 1}, {-1i * kSqrt2, 1}};
  e.eigenvalues = {1i * kSqrt2};
  e.norms_sq = {std::numeric_limits<double>::quiet_NaN()};
  e.errata = {
      "coefficient table lists a1 = +i*sqrt(3); the Jacobi block and phi_2 = x^2 + 2 require "
      "a1 = -i*sqrt(3), which is used here"};
  return f;
}

FamilySpec elementary4() {
  FamilySpec f{"elementary-4", {}, CoefficientSet({2i, 0.0, -2i, 0.0}), {}};
  auto& e = f.expect;
  const CPoly phi3 = xpow(3) + 2.0 * kX;
  e.phi_table = {
      {0, c(1.0)},
      {1, kX - c(2i)},
      {2, CPoly({-1.0, -2i, 1.0})},
      {3, phi3},
      {4, CPoly({1.0, 2i, 1.0, 0.0, 1.0})},
      {5, CPoly({-2i, 3.0, 0.0, 0.0, -2i, 1.0})},
      {6, CPoly({-1.0, -4i, 2.0, 0.0, -1.0, -2i, 1.0})},
      {7, (xpow(4) + c(2.0)) * phi3},
  };
  e.pn = xpow(4) + c(2.0);
  e.critical_poly = xpow(4) * (xpow(2) + c(2.0));
  e.critical_roots = {{0.0, 4}, {1i * kSqrt2, 1}, {-1i * kSqrt2, 1}};
  e.eigenvalues = {1i * kSqrt2};
  e.norms_sq = {kSqrt2};
  return f;
}

FamilySpec elementary5() {
  const cplx s = 1i * kSqrt5;
  FamilySpec f{"elementary-5", {}, CoefficientSet({0.0, s, 0.0, 0.0, -s}), {}};
  auto& e = f.expect;
  const CPoly phi4 = CPoly({1.0, s, -3.0, -s, 1.0});
  e.phi_table = {
      {0, c(1.0)},
      {1, kX},
      {2, CPoly({-1.0, -s, 1.0})},
      {3, CPoly({0.0, -2.0, -s, 1.0})},
      {4, phi4},
      {5, CPoly({s, -2.0, -s, 1.0, 0.0, 1.0})},
      {6, CPoly({-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0})},
      {7, CPoly({0.0, 1.0, 0.0, 0.0, 0.0, -1.0, -s, 1.0})},
      {8, CPoly({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -2.0, -s, 1.0})},
      {9, xpow(5) * phi4},
  };
  e.pn = xpow(5);
  e.critical_poly = xpow(4) * phi4;
  const double r_minus = std::sqrt(10.0 - 2.0 * kSqrt5);
  const double r_plus = std::sqrt(10.0 + 2.0 * kSqrt5);
  const cplx mu1 = 0.25 * cplx(r_minus, 1.0 + kSqrt5);
  const cplx mu2 = 0.25 * cplx(-r_minus, 1.0 + kSqrt5);
  const cplx mu3 = 0.25 * cplx(r_plus, kSqrt5 - 1.0);
  const cplx mu4 = 0.25 * cplx(-r_plus, kSqrt5 - 1.0);
  e.critical_roots = {{mu1, 1}, {mu2, 1}, {mu3, 1}, {mu4, 1}, {0.0, 4}};
  e.eigenvalues = {mu1, mu2};
  e.norms_sq = {2.0 * kSqrt5, 2.0 * kSqrt5};
  return f;
}

FamilySpec generic_n3(std::span<const double> params) {
  std::vector<cplx> a;
  if (params.size() == 3) {
    for (double p : params) a.emplace_back(p, 0.0);
  } else if (params.size() == 6) {
    for (std::size_t k = 0; k < 3; ++k) a.emplace_back(params[2 * k], params[2 * k + 1]);
  } else {
    throw InputError("generic-n3 needs 3 real or 6 (re, im) parameters");
  }
  std::vector<double> kept(params.begin(), params.end());
  FamilySpec f{"generic-n3", kept, CoefficientSet(a), {}};
  auto& e = f.expect;
  const cplx s1 = a[0] + a[1] + a[2];
  const cplx e2 = a[0] * a[2] + a[1] * a[2] + a[0] * a[1];
  const cplx e3 = a[0] * a[1] * a[2];
  e.pn = CPoly({s1 - e3, e2 - 3.0, -s1, 1.0});
  e.qn = CPoly({e2 - 3.0, -2.0 * s1, 3.0});
  const CPoly phi2({a[0] * a[1] - 1.0, -(a[0] + a[1]), 1.0});
  e.phi_table = {{0, c(1.0)}, {1, kX - c(a[0])}, {2, phi2}};
  e.critical_poly = phi2 * *e.qn;
  const cplx half_sum = 0.5 * (a[0] + a[1]);
  const cplx r12 = 0.5 * std::sqrt(4.0 + (a[1] - a[0]) * (a[1] - a[0]));
  const cplx r34 = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - a[0] * a[1] - a[1] * a[2] -
                             a[0] * a[2] + 9.0);
  e.critical_roots = {{half_sum + r12, 1}, {half_sum - r12, 1}, {(s1 + r34) / 3.0, 1},
                      {(s1 - r34) / 3.0, 1}};
  e.critical_roots = merged(e.critical_roots);
  return f;
}

FamilySpec parametric(std::span<const double> params) {
  if (params.size() != 1) throw InputError("parametric needs exactly one parameter alpha");
  const double al = params[0];
  if (!(al >= -1.0 && al <= 1.0)) throw InputError("parametric: alpha must lie in [-1, 1]");
  const auto a = parametric_coefficients(al);
  FamilySpec f{"parametric", {al}, CoefficientSet({a[0], a[1], a[2]}), {}};
  auto& e = f.expect;
  const double t1 = alpha_tilde1_sq(al);
  const double t2 = alpha_tilde2_sq(al);
  e.pn = CPoly({-1i * kSqrt3 * al * t2, -t1, 0.0, 1.0});
  e.qn = CPoly({-t1, 0.0, 3.0});
  const cplx half = 1i * kSqrt3 / 2.0;
  e.phi_table = {
      {0, c(1.0)},
      {1, kX - c(a[0])},
      {2, CPoly({1.5 * al * (al + 1.0) * (3.0 * al - 2.0) - 1.0,
                 -half * (al - 1.0) * (3.0 * al + 2.0), 1.0})},
      {3, CPoly({1i * kSqrt3 * al * (1.0 - t2), 1.0 - t1, 0.0, 1.0})},
  };
  const CPoly psi2 = e.phi_table[2].second;
  const CPoly psi3 = e.phi_table[3].second;
  e.phi_table.emplace_back(4, (kX - c(a[0])) * psi3 - psi2);
  e.phi_table.emplace_back(5, psi2 * *e.pn);
  const auto [m1, m2] = parametric_mu12(al);
  const auto [m3, m4] = parametric_mu34(al);
  e.critical_roots = merged({{m1, 1}, {m2, 1}, {m3, 1}, {m4, 1}});
  e.errata = {
      "third coefficient is labelled a_3(alpha) where period 3 needs a_2(alpha)",
      "a_2(alpha) listed with factor (3alpha-2); (3alpha+2) is required for a0+a1+a2 = 0 and "
      "matches Psi_2, P_3 and mu_{1,2}",
      "Psi_1 listed with (3alpha+2) where a_0(alpha) has (3alpha-2)",
      "Psi_2 x-coefficient has an empty numerator; i*sqrt(3) restores consistency",
  };
  return f;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"elementary-3", "elementary-4", "elementary-5", "generic-n3", "parametric"};
}

FamilySpec family(std::string_view name, std::span<const double> params) {
  const auto no_params = [&] {
    if (!params.empty()) throw InputError("family '" + std::string(name) + "' takes no parameters");
  };
  if (name == "elementary-3") return no_params(), elementary3();
  if (name == "elementary-4") return no_params(), elementary4();
  if (name == "elementary-5") return no_params(), elementary5();
  if (name == "generic-n3") return generic_n3(params);
  if (name == "parametric") return parametric(params);
  throw InputError("unknown family '" + std::string(name) + "'");
}

double alpha_tilde1_sq(double alpha) { return 6.75 * alpha * alpha * (1.0 - alpha * alpha); }

double alpha_tilde2_sq(double alpha) {
  return 0.75 * (1.0 - alpha * alpha) * (9.0 * alpha * alpha - 4.0);
}

double f_of_alpha(double alpha) { return 3.0 * alpha * alpha + 3.0 * alpha - 2.0; }

std::array<cplx, 3> parametric_coefficients(double alpha) {
  const cplx h = 1i * kSqrt3 / 2.0;
  return {h * (alpha + 1.0) * (3.0 * alpha - 2.0), -1i * kSqrt3 * alpha,
          -h * (alpha - 1.0) * (3.0 * alpha + 2.0)};
}

std::pair<cplx, cplx> parametric_mu12(double alpha) {
  const double f = f_of_alpha(alpha);
  const cplx centre = 1i * kSqrt3 / 4.0 * (alpha - 1.0) * (3.0 * alpha + 2.0);
  const cplx r = std::sqrt(cplx(1.0 - 3.0 / 16.0 * f * f, 0.0));
  return {centre + r, centre - r};
}

std::pair<cplx, cplx> parametric_mu34(double alpha) {
  const double t = std::sqrt(alpha_tilde1_sq(alpha)) / kSqrt3;
  return {t, -t};
}

double lambda_of_alpha(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0)) throw InputError("lambda_of_alpha: alpha must lie in [-1, 1]");
  const double t = alpha_tilde1_sq(alpha);
  auto g = [t](double l) { return l * l * l - t * l - 2.0; };
  // g(cbrt 2) <= 0 and g(3 + t) > 0 bracket the positive root.
  double lo = std::cbrt(2.0), hi = 3.0 + t;
  double l = lo;
  for (int it = 0; it < 100; ++it) {
    const double v = g(l);
    if (v == 0.0) return l;
    (v < 0.0 ? lo : hi) = l;
    const double d = 3.0 * l * l - t;
    double next = d > 0.0 ? l - v / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - l) <= 4.0 * std::numeric_limits<double>::epsilon() * next) return next;
    l = next;
  }
  return l;
}

double lambda_max() {
  const double r = std::sqrt(1.0 - (27.0 / 64.0) * (27.0 / 64.0));
  return std::cbrt(1.0 + r) + std::cbrt(1.0 - r);
}

namespace {

bool inside_unit(double alpha, bool use_mu1) {
  const auto [m1, m2] = parametric_mu12(alpha);
  const cplx a0 = parametric_coefficients(alpha)[0];
  return std::abs((use_mu1 ? m1 : m2) - a0) < 1.0 - 1e-12;
}

// Bisection for the change of inside_unit on [lo, hi].
double bisect_crossing(double lo, double hi, bool use_mu1) {
  const bool at_lo = inside_unit(lo, use_mu1);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside_unit(mid, use_mu1) == at_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Thresholds thresholds() {
  Thresholds t;
  const double inner = std::sqrt(0.25 - (4.0 - 2.0 * kSqrt3) / (3.0 * kSqrt3));
  t.alpha1 = -0.5 - inner;
  t.alpha2 = -0.5 + inner;
  t.alpha3 = -0.5 + std::sqrt(0.25 + (4.0 + 2.0 * kSqrt3) / (3.0 * kSqrt3));
  constexpr double kWindow = 0.02;
  t.bisected = {bisect_crossing(t.alpha1 - kWindow, t.alpha1 + kWindow, false),
                bisect_crossing(t.alpha2 - kWindow, t.alpha2 + kWindow, false),
                bisect_crossing(t.alpha3 - kWindow, t.alpha3 + kWindow, true)};
  t.verified = std::abs(t.bisected[0] - t.alpha1) <= 1e-8 &&
               std::abs(t.bisected[1] - t.alpha2) <= 1e-8 &&
               std::abs(t.bisected[2] - t.alpha3) <= 1e-8;
  return t;
}

AlphaAnalysis parametric_analysis(double alpha, double tol) {
  const double params[] = {alpha};
  const FamilySpec spec = family("parametric", params);
  const PhiSequence seq(spec.coeffs);

  AlphaAnalysis an;
  an.alpha = alpha;
  an.mu12 = parametric_mu12(alpha);
  an.mu34 = parametric_mu34(alpha);
  an.lambda = lambda_of_alpha(alpha);
  an.thresholds = thresholds();

  const CriticalReport rep = critical_values(seq, tol);
  const std::array<cplx, 4> mus = {an.mu12.first, an.mu12.second, an.mu34.first, an.mu34.second};
  for (std::size_t k = 0; k < mus.size(); ++k) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& cv : rep.critical_values) nearest = std::min(nearest, std::abs(cv.value - mus[k]));
    an.closed_form_deviation = std::max(an.closed_form_deviation, nearest);
    an.verdicts[k] = certify(seq, mus[k], tol).verdict;
    an.eigenvalue_flags[k] = an.verdicts[k] == Verdict::Eigenvalue;
  }
  return an;
}

}  // namespace pjac
