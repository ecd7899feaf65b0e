#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pjac {

using cplx = std::complex<double>;

/**
 * Dense univariate polynomial with complex coefficients.
 *
 * coeffs()[k] is the coefficient of x^k. The stored vector never ends in an
 * exact zero, so the zero polynomial has no coefficients and degree -1.
 * Values are immutable once built; every operation returns a new polynomial.
 */
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs);
  CPoly(std::initializer_list<cplx> coeffs);

  static CPoly constant(cplx c);
  static CPoly monomial(cplx c, int power);
  /// x - root
  static CPoly linear(cplx root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  /// Coefficient of x^k, zero past the degree.
  cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }
  cplx leading() const { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  /// Horner evaluation.
  cplx operator()(cplx z) const;

  CPoly derivative() const;
  /// Taylor coefficient p^(k)(z)/k!.
  cplx taylor(cplx z, int k) const;

  double abs_sum() const;
  double max_abs() const;
  double norm2() const;

  /// Drops leading coefficients with |c| <= rel * max|c|.
  CPoly chop_leading(double rel) const;
  /// Replaces coefficients with |c| <= abs_tol by exact zeros.
  CPoly chop(double abs_tol) const;

  CPoly operator-() const;
  friend CPoly operator+(const CPoly& p, const CPoly& q);
  friend CPoly operator-(const CPoly& p, const CPoly& q);
  friend CPoly operator*(const CPoly& p, const CPoly& q);
  friend CPoly operator*(cplx s, const CPoly& p);
  friend CPoly operator*(const CPoly& p, cplx s) { return s * p; }

  bool operator==(const CPoly&) const = default;

  std::string to_string(int precision = 6) const;

 private:
  void canonicalize();

  std::vector<cplx> coeffs_;
};

CPoly add(const CPoly& p, const CPoly& q);
CPoly mul(const CPoly& p, const CPoly& q);

struct DivRem {
  CPoly quotient;
  CPoly remainder;
};

/// Synthetic long division: p = d * quotient + remainder, deg remainder < deg d.
/// Throws InvalidDivisor when d is the zero polynomial.
DivRem div_rem(const CPoly& p, const CPoly& d);

/// Threshold below which a remainder counts as rounding noise, relative to
/// the dividend's coefficient 2-norm.
inline constexpr double kExactDivisionRelTol = 1e-8;

/// div_rem that insists on divisibility; throws InexactDivision otherwise.
CPoly exact_quotient(const CPoly& p, const CPoly& d, double rel_tol = kExactDivisionRelTol);

/// outer(inner(x)).
CPoly compose(const CPoly& outer, const CPoly& inner);

/// Chebyshev polynomial of the second kind in the t = 2cos(theta)
/// normalisation: U_{-1} = 0, U_0 = 1, t U_n = U_{n+1} + U_{n-1}.
CPoly chebyshev_u(int n);

/// max_k |p_k - q_k| / max(max|p_k|, max|q_k|); zero when both are zero.
double relative_difference(const CPoly& p, const CPoly& q);

struct Root {
  cplx value;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  /// max |p(root)| over the reported roots
  double residual = 0.0;
  /// radius used to merge nearly coincident roots into one multiple root
  double cluster_radius = 0.0;

  int total_multiplicity() const;
};

inline constexpr double kDefaultRootTol = 1e-10;

struct RootOptions {
  double tol = kDefaultRootTol;
  int max_iterations = 800;
  int polish_steps = 4;
};

/**
 * All complex roots of p with multiplicities.
 *
 * Aberth–Ehrlich simultaneous iteration started on a circle whose radius is
 * the Cauchy bound, then Newton polishing and multiplicity clustering. Roots
 * are returned sorted by real part, then imaginary part.
 * Throws std::invalid_argument for degree < 1 and RootFinderError when the
 * iteration cap is hit.
 */
RootSet roots(const CPoly& p, const RootOptions& opts = {});
RootSet roots(const CPoly& p, double tol);

}  // namespace pjac
