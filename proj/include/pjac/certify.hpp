#pragma once

#include <limits>
#include <string>
#include <vector>

#include "pjac/cpoly.hpp"
#include "pjac/critical.hpp"
#include "pjac/recur.hpp"

namespace pjac {

enum class Verdict { Eigenvalue, NotEigenvalue, Boundary };

std::string to_string(Verdict v);

/// Half-width of the band around coincident transfer roots.
inline constexpr double kBoundaryBand = 1e-7;

/**
 * ℓ² verdict for the formal eigenvector X_μ = (φ_0(μ), φ_1(μ), ...).
 *
 * Along each residue class k mod N the values y_m = φ_{k+Nm}(μ) obey
 * y_{m+2} = P_N(μ) y_{m+1} - D y_m (D = Πβ), so
 * y_m = c₊ z₊^m + c₋ z₋^m with z± the roots of z² - P_N(μ) z + D.
 * X_μ is square summable iff every c₊ vanishes and |z₋| < 1.
 */
struct Certificate {
  cplx mu;
  cplx pn_at_mu;
  cplx z_plus;   // |z_minus| <= |z_plus|
  cplx z_minus;
  /// c₊ per residue class. In the boundary regime (z₊ = z₋) this holds the
  /// coefficient of the linear-growth term instead.
  std::vector<cplx> growth_coeffs;
  std::vector<cplx> decay_coeffs;  // c₋ per residue class
  /// φ_k(μ), k < 2N, with classes that vanish to tolerance set to exactly 0
  std::vector<cplx> initial_values;
  double growth_scale = 0.0;  // max_k |φ_k(μ)| + |φ_{k+N}(μ)|
  Verdict verdict = Verdict::NotEigenvalue;
  double norm_sq = std::numeric_limits<double>::infinity();
  /// Σ φ_n(μ)² (formal square), finite only for eigenvalues
  cplx formal_sum_sq{std::numeric_limits<double>::quiet_NaN(), 0.0};
  std::string diagnostics;

  // Filled by discrete_spectrum.
  std::string source;
  int multiplicity = 1;

  double max_growth() const;
};

Certificate certify(const PhiSequence& seq, cplx mu, double tol = kDefaultRootTol);

struct Eigenvector {
  std::vector<cplx> x;  // x[n] = φ_n(μ)
  std::vector<cplx> y;  // x / ‖x‖
  double norm_sq = 0.0;
  /// max over rows 0..count-2 of |((J - μ) x)_row|
  double residual = 0.0;
};

/// First `count` components of the ℓ² eigenvector, generated from the
/// decaying transfer root. Throws std::invalid_argument unless the
/// certificate is an eigenvalue.
Eigenvector eigenvector(const PhiSequence& seq, const Certificate& cert, std::size_t count,
                        double tol = kDefaultRootTol);

/// Certificates for every critical value: eigenvalues first, then by real
/// part and imaginary part.
std::vector<Certificate> discrete_spectrum(const PhiSequence& seq, const CriticalReport& report,
                                           double tol = kDefaultRootTol);
std::vector<Certificate> discrete_spectrum(const PhiSequence& seq, double tol = kDefaultRootTol);

/// Sampled preimage {x : P_N(x) ∈ [-2, 2]}.
struct SupportCurve {
  std::vector<double> theta_grid;  // P_N(x) = 2cos(theta)
  std::vector<cplx> points;        // grid-major, N per theta
  /// branches[b][j] is the point of branch b at theta_grid[j]
  std::vector<std::vector<cplx>> branches;
  int period = 0;

  /// Branch ends at theta = 0 and theta = pi, where P_N = ±2.
  std::vector<cplx> endpoints() const;
  /// Distance from z to the nearest branch polyline segment.
  double distance(cplx z) const;
};

SupportCurve support_sample(const PhiSequence& seq, int grid_size, double tol = kDefaultRootTol);

/// Roots of φ_n: the eigenvalues of the n×n leading truncation. 1 <= n <= 64.
RootSet truncation_oracle(const PhiSequence& seq, int n, double tol = kDefaultRootTol);

}  // namespace pjac
