#include "pjac/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pjac/certify.hpp"
#include "pjac/corpus.hpp"
#include "pjac/critical.hpp"
#include "pjac/error.hpp"
#include "pjac/families.hpp"

namespace pjac {

using namespace std::complex_literals;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

struct Suite {
  std::vector<Check> out;

  void add(std::string name, double err, double tol, std::string detail = {}) {
    out.push_back({std::move(name), err <= tol, err, tol, std::move(detail)});
  }
  void flag(std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)});
  }
};

std::vector<Root> as_roots(const std::vector<CriticalValue>& cvs) {
  std::vector<Root> out;
  for (const auto& cv : cvs) out.push_back({cv.value, cv.multiplicity});
  return out;
}

// Max distance from each expected root to a computed root of equal
// multiplicity; infinite when the multisets differ in shape.
double root_match(const std::vector<Root>& got, const std::vector<Root>& want) {
  if (got.size() != want.size()) return kInf;
  double worst = 0.0;
  for (const auto& w : want) {
    double best = kInf;
    for (const auto& g : got)
      if (g.multiplicity == w.multiplicity) best = std::min(best, std::abs(g.value - w.value));
    worst = std::max(worst, best);
  }
  return worst;
}

double nearest(const std::vector<cplx>& zs, cplx z) {
  double best = kInf;
  for (const auto& x : zs) best = std::min(best, std::abs(x - z));
  return best;
}

double set_match(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  if (got.size() != want.size()) return kInf;
  double worst = 0.0;
  for (const auto& w : want) worst = std::max(worst, nearest(got, w));
  return worst;
}

CPoly monic(const CPoly& p) { return (1.0 / p.leading()) * p; }

std::string cstr(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<cplx> eigenvalues_of(const std::vector<Certificate>& certs) {
  std::vector<cplx> out;
  for (const auto& c : certs)
    if (c.verdict == Verdict::Eigenvalue) out.push_back(c.mu);
  return out;
}

void family_checks(Suite& s, const FamilySpec& f, const std::string& label, double tol) {
  const PhiSequence seq(f.coeffs);
  const auto& e = f.expect;

  double table_err = 0.0;
  for (const auto& [n, p] : e.phi_table) table_err = std::max(table_err, relative_difference(seq.phi(n), p));
  if (!e.phi_table.empty()) s.add(label + ": phi table", table_err, 1e-9);

  if (e.pn) s.add(label + ": P_N", relative_difference(seq.pn(), *e.pn), 1e-9);

  const CriticalReport rep = critical_values(seq, tol);
  if (e.critical_poly)
    s.add(label + ": critical polynomial up to a constant",
          relative_difference(monic(rep.delta0), monic(*e.critical_poly)), 1e-9);
  if (e.qn) s.add(label + ": Q_N up to a constant", relative_difference(monic(rep.qn), monic(*e.qn)), 1e-9);
  if (!e.critical_roots.empty())
    s.add(label + ": critical values", root_match(as_roots(rep.critical_values), e.critical_roots), 1e-8);

  if (!e.eigenvalues.empty()) {
    const auto certs = discrete_spectrum(seq, rep, tol);
    s.add(label + ": discrete spectrum", set_match(eigenvalues_of(certs), e.eigenvalues), 1e-8);
    for (std::size_t k = 0; k < e.eigenvalues.size() && k < e.norms_sq.size(); ++k) {
      if (std::isnan(e.norms_sq[k])) continue;
      const Certificate c = certify(seq, e.eigenvalues[k], tol);
      s.add(label + ": norm_sq at " + cstr(e.eigenvalues[k]), std::abs(c.norm_sq - e.norms_sq[k]), 1e-8);
    }
  }
}

void elementary_checks(Suite& s, double tol) {
  for (const auto& name : {"elementary-3", "elementary-4", "elementary-5"})
    family_checks(s, family(name), name, tol);

  {
    const PhiSequence seq(family("elementary-3").coeffs);
    const CPoly want = 3.0 * (CPoly::monomial(1.0, 4) + CPoly::monomial(2.0, 2));
    s.add("elementary-3: Delta_0 = 3mu^2(mu^2+2)", relative_difference(delta0(seq), want), 1e-9);
    s.flag("elementary-3: i*sqrt2 eigenvalue", certify(seq, 1i * kSqrt2, tol).verdict == Verdict::Eigenvalue);
    s.flag("elementary-3: -i*sqrt2 rejected",
           certify(seq, -1i * kSqrt2, tol).verdict != Verdict::Eigenvalue);
    s.flag("elementary-3: 0 rejected", certify(seq, 0.0, tol).verdict != Verdict::Eigenvalue);
    const auto v = phi_eval_stream(seq, 0.0, 18);
    const std::vector<cplx> head = {1.0, -1i * std::sqrt(3.0), 2.0, 1i * std::sqrt(3.0), 1.0, 0.0};
    double err = 0.0;
    for (std::size_t k = 0; k < 6; ++k) err = std::max(err, std::abs(v[k] - head[k]));
    for (std::size_t k = 0; k + 6 < v.size(); ++k) err = std::max(err, std::abs(v[k + 6] + v[k]));
    s.add("elementary-3: vector at 0 is 1, -i*sqrt3, 2, i*sqrt3, 1, 0 with x_{k+6} = -x_k", err, 1e-12);
  }
  {
    const PhiSequence seq(family("elementary-4").coeffs);
    const Certificate c = certify(seq, 1i * kSqrt2, tol);
    const Eigenvector ev = eigenvector(seq, c, 16, tol);
    const std::vector<cplx> head = {1.0, 1i * (kSqrt2 - 2.0), 2.0 * kSqrt2 - 3.0, 0.0};
    double err = 0.0;
    for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(ev.x[k] - head[k]));
    for (std::size_t k = 0; k + 4 < 16; ++k)
      err = std::max(err, std::abs(ev.x[k + 4] - (3.0 - 2.0 * kSqrt2) * ev.x[k]));
    s.add("elementary-4: eigenvector 1, i(sqrt2-2), 2sqrt2-3, 0 with ratio 3-2sqrt2", err, 1e-8);
    bool zeros = true;
    for (std::size_t k = 3; k < 16; k += 4) zeros = zeros && ev.y[k] == cplx{};
    s.flag("elementary-4: y_{4k+4} = 0 exactly", zeros);
    s.add("elementary-4: y_1 = 2^{-1/4}", std::abs(ev.y[0] - std::pow(2.0, -0.25)), 1e-8);
    const auto certs = discrete_spectrum(seq, tol);
    const auto eig = eigenvalues_of(certs);
    s.flag("elementary-4: spectrum lists one eigenvalue and rejects the rest",
           eig.size() == 1 && certs.size() >= 2);
  }
  {
    const PhiSequence seq(family("elementary-5").coeffs);
    const cplx mu3 = 0.25 * cplx(std::sqrt(10.0 + 2.0 * kSqrt5), kSqrt5 - 1.0);
    const Certificate c = certify(seq, mu3, tol);
    s.flag("elementary-5: mu_3 rejected", c.verdict == Verdict::NotEigenvalue);
    // squared components grow by -(3+√5)/2 per period
    s.add("elementary-5: (x_{k+5})^2 / (x_k)^2 = -(3+sqrt5)/2 at mu_3",
          std::abs(c.z_plus * c.z_plus + (3.0 + kSqrt5) / 2.0), 1e-8);
  }
  {
    // polynomial toolkit examples
    s.flag("U_{-1} = 0 and U_0 = 1", chebyshev_u(-1).is_zero() && chebyshev_u(0) == CPoly::constant(1.0));
    const PhiSequence e3(family("elementary-3").coeffs);
    const PhiSequence e4(family("elementary-4").coeffs);
    const auto [q3, r3] = div_rem(e3.phi(5), e3.phi(2));
    const auto [q4, r4] = div_rem(e4.phi(7), e4.phi(3));
    s.add("div_rem(phi_5, phi_2) = (x^3, 0) for elementary-3",
          std::max(relative_difference(q3, CPoly::monomial(1.0, 3)), r3.max_abs()), 1e-12);
    s.add("div_rem(phi_7, phi_3) = (x^4+2, 0) for elementary-4",
          std::max(relative_difference(q4, CPoly({2.0, 0.0, 0.0, 0.0, 1.0})), r4.max_abs()), 1e-12);
    s.add("phi_7 = (x^4+2) phi_3 for elementary-4",
          relative_difference(e4.phi(7), CPoly({2.0, 0.0, 0.0, 0.0, 1.0}) * e4.phi(3)), 1e-12);
    s.add("phi_block(2, 3) = phi_11 for elementary-4", relative_difference(phi_block(e4, 2, 3), e4.phi(11)),
          1e-12);
    const auto b3 = jacobi_blocks(e3.coeffs());
    const auto b4 = jacobi_blocks(e4.coeffs());
    double diag = std::abs(b3.b(0, 0) - 1i * std::sqrt(3.0)) + std::abs(b3.b(1, 1) + 1i * std::sqrt(3.0)) +
                  std::abs(b3.b(2, 2));
    diag += std::abs(b4.b(0, 0) - 2i) + std::abs(b4.b(1, 1)) + std::abs(b4.b(2, 2) + 2i) + std::abs(b4.b(3, 3));
    s.add("Jacobi block diagonals of elementary-3 and elementary-4", diag, 0.0);
    int nonzero = 0;
    for (const auto& v : b4.a.data) nonzero += v != cplx{};
    s.flag("block A has a single unit entry at (N-1, 0)", nonzero == 1 && b4.a(3, 0) == 1.0);
  }
}

void parametric_checks(Suite& s, double tol) {
  for (double al : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double p[] = {al};
    const FamilySpec f = family("parametric", p);
    std::ostringstream label;
    label << "parametric alpha=" << al;
    const auto a = parametric_coefficients(al);
    s.add(label.str() + ": a0+a1+a2 = 0", std::abs(a[0] + a[1] + a[2]), 1e-14);
    family_checks(s, f, label.str(), tol);
  }

  const Thresholds t = thresholds();
  s.flag("thresholds: alpha1 < alpha2 < alpha3 in (-1, 1)",
         -1.0 < t.alpha1 && t.alpha1 < t.alpha2 && t.alpha2 < t.alpha3 && t.alpha3 < 1.0);
  for (int k = 0; k < 3; ++k) {
    const double closed[] = {t.alpha1, t.alpha2, t.alpha3};
    s.add("threshold alpha" + std::to_string(k + 1) + " is a crossing (bisection)",
          std::abs(t.bisected[static_cast<std::size_t>(k)] - closed[k]), 1e-8);
  }

  s.add("lambda(0) = cbrt 2", std::abs(lambda_of_alpha(0.0) - std::cbrt(2.0)), 1e-12);
  s.add("lambda(1/sqrt2) = lambda_max", std::abs(lambda_of_alpha(1.0 / kSqrt2) - lambda_max()), 1e-9);

  // interval pattern: (μ1, μ2) flags, μ3,4 never
  struct Probe {
    double alpha;
    bool mu1, mu2;
  };
  const Probe probes[] = {{-0.95, false, false}, {-0.5, false, true}, {-0.05, false, false},
                          {0.5, false, false},   {0.9, true, false},  {1.0, true, false}};
  for (const auto& pr : probes) {
    const AlphaAnalysis an = parametric_analysis(pr.alpha, tol);
    std::ostringstream name;
    name << "parametric alpha=" << pr.alpha << ": eigenvalue flags (mu1, mu2, mu3, mu4) = (" << pr.mu1 << ", "
         << pr.mu2 << ", 0, 0)";
    s.flag(name.str(), an.eigenvalue_flags[0] == pr.mu1 && an.eigenvalue_flags[1] == pr.mu2 &&
                           !an.eigenvalue_flags[2] && !an.eigenvalue_flags[3]);
  }
}

void generic_checks(Suite& s, Rng& rng, double tol) {
  {
    const double p[] = {0.0, 0.0, 0.0};
    const FamilySpec f = family("generic-n3", p);
    const PhiSequence seq(f.coeffs);
    const CriticalReport rep = critical_values(seq, tol);
    bool ok = rep.critical_values.size() == 2;
    for (const auto& cv : rep.critical_values) ok = ok && cv.phi_root && cv.q_root && cv.multiplicity == 2;
    const std::vector<Root> want = {{-1.0, 2}, {1.0, 2}};
    s.add("generic-n3 (0,0,0): critical values +-1 from phi_2 and Q_3",
          ok ? root_match(as_roots(rep.critical_values), want) : kInf, 1e-8);
  }

  double pn_err = 0.0, closed_err = 0.0, zero_sum_err = 0.0;
  int mismatches = 0, compared = 0;
  for (int t = 0; t < 50; ++t) {
    auto a = random_triple(rng);
    const double p[] = {a[0].real(), a[0].imag(), a[1].real(), a[1].imag(), a[2].real(), a[2].imag()};
    const FamilySpec f = family("generic-n3", p);
    const PhiSequence seq(f.coeffs);
    const CriticalReport rep = critical_values(seq, tol);
    std::vector<cplx> phi_roots, q_roots;
    for (const auto& r : roots(rep.phi_nm1, tol).roots) phi_roots.push_back(r.value);
    for (const auto& r : roots(rep.qn, tol).roots) q_roots.push_back(r.value);
    const cplx h = 0.5 * (a[0] + a[1]);
    const cplx r12 = 0.5 * std::sqrt(4.0 + (a[1] - a[0]) * (a[1] - a[0]));
    const cplx s1 = a[0] + a[1] + a[2];
    const cplx r34 = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - a[0] * a[1] - a[1] * a[2] -
                               a[0] * a[2] + 9.0);
    closed_err = std::max(closed_err, set_match(phi_roots, {h + r12, h - r12}));
    closed_err = std::max(closed_err, set_match(q_roots, {(s1 + r34) / 3.0, (s1 - r34) / 3.0}));
    pn_err = std::max(pn_err, relative_difference(seq.pn(), *f.expect.pn));

    for (const auto& mu : phi_roots) {
      const double dist = std::abs(mu - a[0]);
      if (std::abs(dist - 1.0) <= 1e-3) continue;
      ++compared;
      const bool eig = certify(seq, mu, tol).verdict == Verdict::Eigenvalue;
      if (eig != (dist < 1.0)) ++mismatches;
    }

    // zero-sum variant
    a[2] = -a[0] - a[1];
    const double z[] = {a[0].real(), a[0].imag(), a[1].real(), a[1].imag(), a[2].real(), a[2].imag()};
    const PhiSequence zs(family("generic-n3", z).coeffs);
    const cplx e2 = a[0] * a[2] + a[1] * a[2] + a[0] * a[1];
    const CPoly p28({-a[0] * a[1] * a[2], e2 - 3.0, 0.0, 1.0});
    zero_sum_err = std::max(zero_sum_err, relative_difference(zs.pn(), p28));
    const cplx r = std::sqrt(1.0 + (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) / 6.0);
    std::vector<cplx> qz;
    for (const auto& rt : roots(critical_values(zs, tol).qn, tol).roots) qz.push_back(rt.value);
    zero_sum_err = std::max(zero_sum_err, set_match(qz, {r, -r}));
  }
  s.add("generic-n3 random: P_3 closed form", pn_err, 1e-9);
  s.add("generic-n3 random: phi_2 and Q_3 roots match closed forms", closed_err, 1e-8);
  s.add("generic-n3 random zero-sum: P_3 and Q_3 roots", zero_sum_err, 1e-8);
  s.add("generic-n3 random: certifier agrees with |mu - a0| < 1", mismatches, 0.0,
        std::to_string(compared) + " roots compared");
}

void identity_checks(Suite& s, Rng& rng) {
  double l1 = 0.0, l2 = 0.0, tele = 0.0, rem = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 5;
    const PhiSequence seq(random_coefficient_set(rng, n));
    const CPoly& p = seq.pn();
    for (int k = 2 * n; k <= 6 * n; ++k)
      l1 = std::max(l1, relative_difference(seq.phi(k), p * seq.phi(k - n) - seq.phi(k - 2 * n)));
    const CPoly d0 = delta_n(seq, 0);
    for (int k = 1; k <= 12; ++k) l2 = std::max(l2, relative_difference(delta_n(seq, k), d0));

    const CPoly s1 = sigma(seq, n, 2 * n - 1);
    const CPoly s2 = sigma(seq, 0, n - 1);
    const CPoly p2 = p * p;
    for (int m = 2; m <= 4; ++m) {
      const CPoly lhs = (CPoly::constant(4.0) - p2) * sigma(seq, 0, m * n - 1);
      const CPoly rhs = (2.0 * (m - 1)) * d0 + s1 + (CPoly::constant(3.0) - p2) * s2 +
                        sigma(seq, (m - 1) * n, m * n - 1) - sigma(seq, m * n, (m + 1) * n - 1);
      tele = std::max(tele, relative_difference(lhs, rhs));
    }
    const CriticalReport rep = critical_values(seq);
    rem = std::max(rem, rep.factor_remainder);
  }
  s.add("random families: phi_n = P_N phi_{n-N} - phi_{n-2N}", l1, 1e-8);
  s.add("random families: Delta_n = Delta_0", l2, 1e-9);
  s.add("random families: telescoping sum identity", tele, 1e-8);
  s.add("random families: phi_{N-1} divides Delta_0", rem, kExactDivisionRelTol);
}

}  // namespace

std::vector<Check> regression_suite(std::uint64_t seed, double tol) {
  Suite s;
  Rng rng(seed);
  elementary_checks(s, tol);
  parametric_checks(s, tol);
  generic_checks(s, rng, tol);
  identity_checks(s, rng);
  return s.out;
}

}  // namespace pjac
