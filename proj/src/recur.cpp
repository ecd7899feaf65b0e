#include "pjac/recur.hpp"

#include <cmath>
#include <stdexcept>

#include "pjac/error.hpp"

namespace pjac {

Convention parse_convention(const std::string& tag) {
  if (tag == "recurrence-minus") return Convention::RecurrenceMinus;
  if (tag == "recurrence-plus") return Convention::RecurrencePlus;
  throw InputError("unknown convention tag '" + tag + "'");
}

std::string to_string(Convention c) {
  return c == Convention::RecurrenceMinus ? "recurrence-minus" : "recurrence-plus";
}

CoefficientSet::CoefficientSet(std::vector<cplx> alpha, std::vector<cplx> beta,
                               Convention convention)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.empty()) throw InputError("period must be at least 1");
  if (beta_.size() != alpha_.size())
    throw InputError("alpha and beta must both have one entry per period index");
  for (const auto& b : beta_)
    if (b == cplx{}) throw InputError("every beta coefficient must be nonzero");
  for (const auto& a : alpha_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw InputError("alpha coefficients must be finite");
  if (convention == Convention::RecurrencePlus)
    for (auto& a : alpha_) a = -a;
}

CoefficientSet::CoefficientSet(std::vector<cplx> alpha)
    : CoefficientSet(alpha, std::vector<cplx>(alpha.size(), cplx{1.0})) {}

std::size_t CoefficientSet::index(long n) const {
  const long p = static_cast<long>(alpha_.size());
  return static_cast<std::size_t>(((n % p) + p) % p);
}

cplx CoefficientSet::period_determinant() const {
  cplx d{1.0};
  for (const auto& b : beta_) d *= b;
  return d;
}

PhiSequence::PhiSequence(CoefficientSet coeffs) : coeffs_(std::move(coeffs)) {
  cache_.push_back(CPoly::constant(1.0));
}

const CPoly& PhiSequence::phi(int n) const {
  static const CPoly kZero;
  if (n < -1) throw std::invalid_argument("phi: index must be >= -1");
  if (n == -1) return kZero;
  std::lock_guard lock(mu_);
  while (static_cast<int>(cache_.size()) <= n) {
    const int k = static_cast<int>(cache_.size()) - 1;  // build φ_{k+1}
    const CPoly& cur = cache_[static_cast<std::size_t>(k)];
    const CPoly& prev = k > 0 ? cache_[static_cast<std::size_t>(k - 1)] : kZero;
    cache_.push_back(CPoly::linear(coeffs_.alpha(k)) * cur - coeffs_.beta(k) * prev);
  }
  return cache_[static_cast<std::size_t>(n)];
}

const CPoly& PhiSequence::pn() const {
  {
    std::lock_guard lock(mu_);
    if (pn_) return *pn_;
  }
  CPoly p = extract_pn(*this);
  std::lock_guard lock(mu_);
  if (!pn_) pn_ = std::move(p);
  return *pn_;
}

std::vector<cplx> phi_eval_stream(const CoefficientSet& coeffs, cplx mu, std::size_t count) {
  if (count == 0) throw std::invalid_argument("phi_eval_stream: count must be >= 1");
  std::vector<cplx> out;
  out.reserve(count);
  cplx prev{}, cur{1.0};
  out.push_back(cur);
  for (std::size_t n = 1; n < count; ++n) {
    const long k = static_cast<long>(n) - 1;
    const cplx next = (mu - coeffs.alpha(k)) * cur - coeffs.beta(k) * prev;
    const double mag = std::abs(next);
    if (!(mag <= kOverflowGuard)) throw OverflowGuardError(n, mag);
    out.push_back(next);
    prev = cur;
    cur = next;
  }
  return out;
}

std::vector<cplx> phi_eval_stream(const PhiSequence& seq, cplx mu, std::size_t count) {
  return phi_eval_stream(seq.coeffs(), mu, count);
}

CPoly extract_pn(const PhiSequence& seq) {
  const int n = seq.period();
  return exact_quotient(seq.phi(2 * n - 1), seq.phi(n - 1));
}

CPoly chebyshev_of_pn(const PhiSequence& seq, int m) {
  if (m < -1) throw std::invalid_argument("chebyshev_of_pn: m must be >= -1");
  const CoefficientSet& cs = seq.coeffs();
  if (cs.unimodular()) return compose(chebyshev_u(m), seq.pn());
  const cplx det = cs.period_determinant();
  CPoly prev;
  CPoly cur = CPoly::constant(1.0);
  if (m == -1) return prev;
  for (int k = 0; k < m; ++k) {
    CPoly next = seq.pn() * cur - det * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

CPoly phi_block(const PhiSequence& seq, int m, int k) {
  const int n = seq.period();
  if (m < 2) throw std::invalid_argument("phi_block: m must be >= 2");
  if (k < 0 || k >= n) throw std::invalid_argument("phi_block: k must lie in [0, N-1]");
  const cplx det = seq.coeffs().period_determinant();
  return seq.phi(k + n) * chebyshev_of_pn(seq, m - 1) - det * (seq.phi(k) * chebyshev_of_pn(seq, m - 2));
}

JacobiBlocks jacobi_blocks(const CoefficientSet& coeffs) {
  const int n = coeffs.period();
  JacobiBlocks j{Block(n), Block(n), Block(n)};
  j.a(n - 1, 0) = 1.0;
  for (int r = 0; r < n; ++r) {
    j.b(r, r) = coeffs.alpha(r);
    if (r + 1 < n) j.b(r, r + 1) = 1.0;
    if (r >= 1) j.b(r, r - 1) = coeffs.beta(r);
  }
  j.c(0, n - 1) = coeffs.beta(0);
  return j;
}

std::vector<cplx> apply_truncated(const JacobiBlocks& blocks, std::span<const cplx> v,
                                  std::size_t rows) {
  const std::size_t n = static_cast<std::size_t>(blocks.b.n);
  auto at = [&](std::size_t i) { return i < v.size() ? v[i] : cplx{}; };
  std::vector<cplx> out(rows);
  for (std::size_t row = 0; row < rows; ++row) {
    const std::size_t bi = row / n;
    const int r = static_cast<int>(row % n);
    cplx acc{};
    for (int c = 0; c < blocks.b.n; ++c) {
      acc += blocks.b(r, c) * at(bi * n + static_cast<std::size_t>(c));
      acc += blocks.a(r, c) * at((bi + 1) * n + static_cast<std::size_t>(c));
      if (bi >= 1) acc += blocks.c(r, c) * at((bi - 1) * n + static_cast<std::size_t>(c));
    }
    out[row] = acc;
  }
  return out;
}

}  // namespace pjac
