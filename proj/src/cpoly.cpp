#include "pjac/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "pjac/error.hpp"

namespace pjac {

CPoly::CPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

CPoly::CPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { canonicalize(); }

void CPoly::canonicalize() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

CPoly CPoly::constant(cplx c) { return CPoly({c}); }

CPoly CPoly::monomial(cplx c, int power) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<cplx> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return CPoly(std::move(v));
}

CPoly CPoly::linear(cplx root) { return CPoly({-root, cplx{1.0}}); }

cplx CPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CPoly CPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return CPoly(std::move(d));
}

cplx CPoly::taylor(cplx z, int k) const {
  // Repeated synthetic division by (x - z); the k-th remainder is p^(k)(z)/k!.
  std::vector<cplx> work(coeffs_);
  cplx rem{};
  for (int step = 0; step <= k; ++step) {
    if (work.empty()) return {};
    rem = cplx{};
    std::vector<cplx> next(work.size() > 1 ? work.size() - 1 : 0);
    for (std::size_t i = work.size(); i-- > 0;) {
      rem = rem * z + work[i];
      if (i > 0) next[i - 1] = rem;
    }
    work = std::move(next);
  }
  return rem;
}

double CPoly::abs_sum() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double CPoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double CPoly::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

CPoly CPoly::chop_leading(double rel) const {
  const double cut = rel * max_abs();
  std::vector<cplx> v(coeffs_);
  while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
  return CPoly(std::move(v));
}

CPoly CPoly::chop(double abs_tol) const {
  std::vector<cplx> v(coeffs_);
  for (auto& c : v)
    if (std::abs(c) <= abs_tol) c = cplx{};
  return CPoly(std::move(v));
}

CPoly CPoly::operator-() const {
  std::vector<cplx> v(coeffs_);
  for (auto& c : v) c = -c;
  return CPoly(std::move(v));
}

CPoly operator+(const CPoly& p, const CPoly& q) {
  std::vector<cplx> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] + q[k];
  return CPoly(std::move(v));
}

CPoly operator-(const CPoly& p, const CPoly& q) {
  std::vector<cplx> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] - q[k];
  return CPoly(std::move(v));
}

CPoly operator*(const CPoly& p, const CPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<cplx> v(p.coeffs_.size() + q.coeffs_.size() - 1);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return CPoly(std::move(v));
}

CPoly operator*(cplx s, const CPoly& p) {
  std::vector<cplx> v(p.coeffs_);
  for (auto& c : v) c *= s;
  return CPoly(std::move(v));
}

std::string CPoly::to_string(int precision) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << std::setprecision(precision);
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const cplx c = coeffs_[k];
    if (c == cplx{}) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k >= 1) os << "x";
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

CPoly add(const CPoly& p, const CPoly& q) { return p + q; }
CPoly mul(const CPoly& p, const CPoly& q) { return p * q; }

DivRem div_rem(const CPoly& p, const CPoly& d) {
  if (d.is_zero()) throw InvalidDivisor();
  if (p.degree() < d.degree()) return {CPoly{}, p};
  const auto dc = d.coeffs();
  const int dn = d.degree();
  std::vector<cplx> rem(p.coeffs().begin(), p.coeffs().end());
  std::vector<cplx> quot(static_cast<std::size_t>(p.degree() - dn) + 1);
  const cplx lead = d.leading();
  for (int k = p.degree() - dn; k >= 0; --k) {
    const cplx q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= q * dc[static_cast<std::size_t>(j)];
    // The leading term is eliminated by construction.
    rem[static_cast<std::size_t>(k + dn)] = cplx{};
  }
  rem.resize(static_cast<std::size_t>(dn));
  return {CPoly(std::move(quot)), CPoly(std::move(rem))};
}

CPoly exact_quotient(const CPoly& p, const CPoly& d, double rel_tol) {
  auto [q, r] = div_rem(p, d);
  const double scale = p.norm2();
  const double rel = scale > 0.0 ? r.norm2() / scale : r.norm2();
  if (rel > rel_tol)
    throw InexactDivision("polynomial division left a nonzero remainder", rel);
  return q;
}

CPoly compose(const CPoly& outer, const CPoly& inner) {
  CPoly acc;
  const auto c = outer.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * inner + CPoly::constant(c[k]);
  return acc;
}

CPoly chebyshev_u(int n) {
  if (n < -1) throw std::invalid_argument("chebyshev_u: n must be >= -1");
  CPoly prev;                       // U_{-1}
  CPoly cur = CPoly::constant(1.0);  // U_0
  if (n == -1) return prev;
  const CPoly t = CPoly::monomial(1.0, 1);
  for (int k = 0; k < n; ++k) {
    CPoly next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double relative_difference(const CPoly& p, const CPoly& q) {
  const double scale = std::max(p.max_abs(), q.max_abs());
  if (scale == 0.0) return 0.0;
  return (p - q).max_abs() / scale;
}

int RootSet::total_multiplicity() const {
  int m = 0;
  for (const auto& r : roots) m += r.multiplicity;
  return m;
}

}  // namespace pjac
