#pragma once

#include <string>
#include <vector>

#include "pjac/cpoly.hpp"
#include "pjac/recur.hpp"

namespace pjac {

struct SumsSD {
  CPoly s;  // Σ_{k=n}^{n+2N-1} φ_k²
  CPoly d;  // Σ_{k=n}^{n+N-1} φ_k φ_{k+N}
};

/// Formal (not modulus) sums over the window starting at n.
SumsSD sums_sd(const PhiSequence& seq, int n);

/// σ_{first,last} = Σ_{k=first}^{last} φ_k².
CPoly sigma(const PhiSequence& seq, int first, int last);

/// Δ_n = S_n - P_N D_n. Not chopped.
///
/// Terms are weighted by w^-k, w = D^{1/N}:
///   Σ_{k=n}^{n+2N-1} w^-k φ_k² - P_N Σ_{k=n}^{n+N-1} w^-(k+N) φ_k φ_{k+N}.
/// This is the plain form when D = 1 and is independent of n for any D.
CPoly delta_n(const PhiSequence& seq, int n);

/// Critical polynomial Δ_0, with leading rounding noise chopped.
CPoly delta0(const PhiSequence& seq);

inline constexpr double kDeltaChopRel = 1e-11;
/// Two critical values closer than this times (1+|μ|) are one value.
inline constexpr double kDedupRel = 1e-7;

struct CriticalValue {
  cplx value;
  /// multiplicity as a root of Δ_0 (sum over the merged sources)
  int multiplicity = 1;
  bool phi_root = false;  // root of φ_{N-1}
  bool q_root = false;    // root of Q_N
  bool delta_root = false;  // from Δ_0 directly (factorisation fallback)

  std::string source() const;
};

struct CriticalReport {
  CPoly pn;
  CPoly phi_nm1;
  CPoly delta0;
  CPoly qn;
  /// false when Δ_0 was not divisible by φ_{N-1} within tolerance
  bool factorized = true;
  double factor_remainder = 0.0;
  /// false when Πβ != 1: the critical equation is then not a proven
  /// necessary condition
  bool theorem_applies = true;
  std::vector<CriticalValue> critical_values;
  double residual = 0.0;  // max |Δ_0(μ)| over the critical values
  double cluster_radius = 0.0;
  std::vector<std::string> warnings;
};

/// Q_N = Δ_0 / φ_{N-1}. On a nonzero remainder it records a warning,
/// clears report.factorized and returns the zero polynomial.
CPoly factor_qn(CriticalReport& report);

/// Full pipeline: P_N, Δ_0, Q_N and the tagged, deduplicated critical values.
CriticalReport critical_values(const PhiSequence& seq, double tol = kDefaultRootTol);

}  // namespace pjac
