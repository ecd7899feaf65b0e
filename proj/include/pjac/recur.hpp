#pragma once

#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pjac/cpoly.hpp"

namespace pjac {

/// Sign convention of user-supplied diagonal coefficients.
enum class Convention {
  /// φ_{n+1} = (x - a_n) φ_n - b_n φ_{n-1}; the engine's native form.
  RecurrenceMinus,
  /// φ_n = (x + a_{n-1}) φ_{n-1} - b_{n-1} φ_{n-2}; mapped by α_n = -a_n.
  RecurrencePlus,
};

Convention parse_convention(const std::string& tag);
std::string to_string(Convention c);

/**
 * Period-N coefficients of φ_{n+1}(x) = (x - α_n) φ_n(x) - β_n φ_{n-1}(x),
 * with α_{n+N} = α_n and β_{n+N} = β_n.
 *
 * Every β_k must be nonzero; the constructor throws InputError otherwise.
 */
class CoefficientSet {
 public:
  CoefficientSet(std::vector<cplx> alpha, std::vector<cplx> beta,
                 Convention convention = Convention::RecurrenceMinus);
  /// All β_k = 1.
  explicit CoefficientSet(std::vector<cplx> alpha);

  int period() const { return static_cast<int>(alpha_.size()); }
  cplx alpha(long n) const { return alpha_[index(n)]; }
  cplx beta(long n) const { return beta_[index(n)]; }
  const std::vector<cplx>& alphas() const { return alpha_; }
  const std::vector<cplx>& betas() const { return beta_; }

  /// Π β_k over one period, the determinant of the period transfer matrix.
  cplx period_determinant() const;
  bool unimodular(double tol = 1e-12) const { return std::abs(period_determinant() - 1.0) <= tol; }

 private:
  std::size_t index(long n) const;

  std::vector<cplx> alpha_;
  std::vector<cplx> beta_;
};

/// Magnitude cap for streamed recurrence values.
inline constexpr double kOverflowGuard = 1e150;

/**
 * The polynomials φ_n for one coefficient set, memoised on demand.
 *
 * phi(n) returns a reference that stays valid for the lifetime of the
 * sequence; concurrent calls are serialised internally.
 */
class PhiSequence {
 public:
  explicit PhiSequence(CoefficientSet coeffs);

  PhiSequence(const PhiSequence&) = delete;
  PhiSequence& operator=(const PhiSequence&) = delete;

  const CoefficientSet& coeffs() const { return coeffs_; }
  int period() const { return coeffs_.period(); }

  /// φ_n for n >= -1.
  const CPoly& phi(int n) const;

  /// P_N = φ_{2N-1} / φ_{N-1}; cached after the first call.
  const CPoly& pn() const;

 private:
  CoefficientSet coeffs_;
  mutable std::mutex mu_;
  mutable std::deque<CPoly> cache_;  // cache_[n] = φ_n, n >= 0
  mutable std::optional<CPoly> pn_;
};

/// φ_n(μ), n = 0..count-1, by the scalar recurrence.
/// Throws OverflowGuardError when a magnitude exceeds kOverflowGuard.
std::vector<cplx> phi_eval_stream(const PhiSequence& seq, cplx mu, std::size_t count);
std::vector<cplx> phi_eval_stream(const CoefficientSet& coeffs, cplx mu, std::size_t count);

/// P_N from the divisor identity φ_{2N-1} = φ_{N-1} P_N. Throws
/// InexactDivision when the remainder is not rounding noise.
CPoly extract_pn(const PhiSequence& seq);

/// Scaled Chebyshev polynomials of P_N: W_{-1} = 0, W_0 = 1,
/// W_{m+1} = P_N W_m - D W_{m-1} with D the period determinant.
/// For D = 1 this is U_m(P_N(x)).
CPoly chebyshev_of_pn(const PhiSequence& seq, int m);

/// φ_{Nm+k} = φ_{k+N} W_{m-1} - D φ_k W_{m-2} for m >= 2, 0 <= k < N.
CPoly phi_block(const PhiSequence& seq, int m, int k);

/// Dense N×N complex matrix, row-major.
struct Block {
  int n = 0;
  std::vector<cplx> data;

  Block() = default;
  explicit Block(int size) : n(size), data(static_cast<std::size_t>(size) * size) {}
  cplx& operator()(int r, int c) { return data[static_cast<std::size_t>(r * n + c)]; }
  cplx operator()(int r, int c) const { return data[static_cast<std::size_t>(r * n + c)]; }
};

/**
 * Block-tridiagonal form of the Jacobi operator: block row i has C at
 * column i-1, B at column i and A at column i+1. Row n of the scalar
 * operator is (β_n, α_n, 1) on columns (n-1, n, n+1).
 */
struct JacobiBlocks {
  Block a;  // single 1 at (N-1, 0)
  Block b;  // diagonal α, superdiagonal 1, subdiagonal β_1..β_{N-1}
  Block c;  // β_0 at (0, N-1)
};

JacobiBlocks jacobi_blocks(const CoefficientSet& coeffs);

/// Rows 0..rows-1 of the operator applied to v (v beyond its end is zero).
std::vector<cplx> apply_truncated(const JacobiBlocks& blocks, std::span<const cplx> v,
                                  std::size_t rows);

}  // namespace pjac
