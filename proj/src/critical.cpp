#include "pjac/critical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_complex.hpp>

#include "pjac/error.hpp"

namespace pjac {

std::string CriticalValue::source() const {
  std::string s;
  auto add = [&](const char* tag) {
    if (!s.empty()) s += '+';
    s += tag;
  };
  if (phi_root) add("phi-root");
  if (q_root) add("q-root");
  if (delta_root) add("delta-root");
  return s;
}

CPoly sigma(const PhiSequence& seq, int first, int last) {
  CPoly acc;
  for (int k = first; k <= last; ++k) acc = acc + seq.phi(k) * seq.phi(k);
  return acc;
}

SumsSD sums_sd(const PhiSequence& seq, int n) {
  if (n < 0) throw std::invalid_argument("sums_sd: n must be >= 0");
  const int period = seq.period();
  SumsSD out;
  out.s = sigma(seq, n, n + 2 * period - 1);
  for (int k = n; k < n + period; ++k) out.d = out.d + seq.phi(k) * seq.phi(k + period);
  return out;
}

namespace {

// S - P D cancels everything above degree 2N-2 or so; at n = 12 double
// precision keeps ~6 digits of the result and long double ~9. Assemble in
// quad precision.
using lcplx = boost::multiprecision::cpp_complex_quad;
using LPoly = std::vector<lcplx>;

LPoly lmul(const LPoly& a, const LPoly& b) {
  LPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void laccumulate(LPoly& acc, const LPoly& p, const lcplx& s = lcplx(1)) {
  if (acc.size() < p.size()) acc.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

// Quotient of monic p by monic d.
LPoly lquotient(LPoly p, const LPoly& d) {
  const std::size_t dn = d.size() - 1;
  LPoly q(p.size() - dn);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = p[k + dn] / d[dn];
    for (std::size_t j = 0; j <= dn; ++j) p[k + j] -= q[k] * d[j];
  }
  return q;
}

CPoly to_cpoly(const LPoly& p) {
  std::vector<cplx> c;
  for (const auto& v : p) c.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  return CPoly(std::move(c));
}

}  // namespace

CPoly delta_n(const PhiSequence& seq, int n) {
  if (n < 0) throw std::invalid_argument("delta_n: n must be >= 0");
  const CoefficientSet& c = seq.coeffs();
  const int period = seq.period();
  const int last = std::max(n + 2 * period - 1, 2 * period - 1);
  std::vector<LPoly> phi;
  phi.push_back({lcplx(1)});
  LPoly prev;
  for (int k = 0; k < last; ++k) {
    const cplx a = c.alpha(k), b = c.beta(k);
    LPoly next = lmul({lcplx(-a.real(), -a.imag()), lcplx(1)}, phi.back());
    if (!prev.empty()) laccumulate(next, prev, -lcplx(b.real(), b.imag()));
    prev = phi.back();
    phi.push_back(std::move(next));
  }
  const LPoly p = lquotient(phi[static_cast<std::size_t>(2 * period - 1)],
                            phi[static_cast<std::size_t>(period - 1)]);
  lcplx det(1);
  for (int k = 0; k < period; ++k) det *= lcplx(c.beta(k).real(), c.beta(k).imag());
  const lcplx winv = lcplx(1) / pow(det, lcplx(1) / lcplx(period));
  auto weight = [&](int k) { return det == lcplx(1) ? lcplx(1) : pow(winv, k); };
  LPoly s, d;
  for (int k = n; k < n + 2 * period; ++k) {
    const auto& f = phi[static_cast<std::size_t>(k)];
    laccumulate(s, lmul(f, f), weight(k));
  }
  for (int k = n; k < n + period; ++k)
    laccumulate(d, lmul(phi[static_cast<std::size_t>(k)], phi[static_cast<std::size_t>(k + period)]), weight(k + period));
  laccumulate(s, lmul(p, d), lcplx(-1));
  return to_cpoly(s);
}

CPoly delta0(const PhiSequence& seq) { return delta_n(seq, 0).chop_leading(kDeltaChopRel); }

CPoly factor_qn(CriticalReport& report) {
  if (report.phi_nm1.degree() == 0) {
    report.factor_remainder = 0.0;
    return (1.0 / report.phi_nm1.leading()) * report.delta0;
  }
  auto [q, r] = div_rem(report.delta0, report.phi_nm1);
  const double scale = report.delta0.norm2();
  report.factor_remainder = scale > 0.0 ? r.norm2() / scale : r.norm2();
  if (report.factor_remainder > kExactDivisionRelTol) {
    std::ostringstream os;
    os << "phi_{N-1} does not divide Delta_0: relative remainder " << report.factor_remainder;
    report.warnings.push_back(os.str());
    report.factorized = false;
    return {};
  }
  return q.chop_leading(kDeltaChopRel);
}

namespace {

void merge_into(std::vector<CriticalValue>& out, const RootSet& rs, bool phi, bool q) {
  for (const auto& r : rs.roots) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CriticalValue& cv) {
      return std::abs(cv.value - r.value) <= kDedupRel * (1.0 + std::abs(r.value));
    });
    if (it == out.end()) {
      CriticalValue cv;
      cv.value = r.value;
      cv.multiplicity = r.multiplicity;
      cv.phi_root = phi;
      cv.q_root = q;
      out.push_back(cv);
    } else {
      it->multiplicity += r.multiplicity;
      it->phi_root = it->phi_root || phi;
      it->q_root = it->q_root || q;
    }
  }
}

bool value_less(const CriticalValue& x, const CriticalValue& y) {
  constexpr double kTie = 1e-9;
  if (std::abs(x.value.real() - y.value.real()) > kTie * (1.0 + std::abs(x.value.real())))
    return x.value.real() < y.value.real();
  return x.value.imag() < y.value.imag();
}

}  // namespace

CriticalReport critical_values(const PhiSequence& seq, double tol) {
  CriticalReport rep;
  const int period = seq.period();
  rep.pn = seq.pn();
  rep.phi_nm1 = seq.phi(period - 1);
  rep.delta0 = delta0(seq);
  rep.theorem_applies = seq.coeffs().unimodular();
  if (!rep.theorem_applies)
    rep.warnings.push_back(
        "period determinant prod(beta) != 1: critical values are not a proven superset of "
        "the discrete spectrum");

  if (rep.delta0.is_zero()) throw NumericalError("critical polynomial vanishes identically");

  rep.qn = factor_qn(rep);
  RootOptions opts;
  opts.tol = tol;
  rep.cluster_radius = std::sqrt(tol);

  if (rep.factorized) {
    if (rep.phi_nm1.degree() >= 1) merge_into(rep.critical_values, roots(rep.phi_nm1, opts), true, false);
    if (rep.qn.degree() >= 1) merge_into(rep.critical_values, roots(rep.qn, opts), false, true);
  } else if (rep.delta0.degree() >= 1) {
    std::vector<CriticalValue> direct;
    merge_into(direct, roots(rep.delta0, opts), false, false);
    for (auto& cv : direct) cv.delta_root = true;
    rep.critical_values = std::move(direct);
  }

  std::sort(rep.critical_values.begin(), rep.critical_values.end(), value_less);
  for (const auto& cv : rep.critical_values)
    rep.residual = std::max(rep.residual, std::abs(rep.delta0(cv.value)));
  return rep;
}

}  // namespace pjac
