#include "pjac/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pjac/error.hpp"

namespace pjac {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Eigenvalue:
      return "eigenvalue";
    case Verdict::NotEigenvalue:
      return "not-eigenvalue";
    case Verdict::Boundary:
      return "boundary";
  }
  return "unknown";
}

double Certificate::max_growth() const {
  double m = 0.0;
  for (const auto& c : growth_coeffs) m = std::max(m, std::abs(c));
  return m;
}

Certificate certify(const PhiSequence& seq, cplx mu, double tol) {
  const int n = seq.period();
  const auto un = static_cast<std::size_t>(n);
  Certificate cert;
  cert.mu = mu;
  std::ostringstream diag;
  diag.precision(6);

  std::vector<cplx> v;
  try {
    v = phi_eval_stream(seq, mu, 2 * un);
  } catch (const OverflowGuardError& e) {
    cert.diagnostics = std::string("initial block overflowed: ") + e.what();
    return cert;
  }

  const cplx det = seq.coeffs().period_determinant();
  const cplx p = seq.pn()(mu);
  cert.pn_at_mu = p;

  // Larger root from the quadratic formula, smaller from Vieta.
  const cplx disc = std::sqrt(p * p - 4.0 * det);
  const cplx r1 = 0.5 * (p + disc);
  const cplx r2 = 0.5 * (p - disc);
  cert.z_plus = std::abs(r1) >= std::abs(r2) ? r1 : r2;
  cert.z_minus = det / cert.z_plus;

  for (std::size_t k = 0; k < un; ++k)
    cert.growth_scale = std::max(cert.growth_scale, std::abs(v[k]) + std::abs(v[k + un]));

  cert.initial_values = v;
  for (std::size_t k = 0; k < un; ++k) {
    if (std::abs(v[k]) <= tol * cert.growth_scale && std::abs(v[k + un]) <= tol * cert.growth_scale) {
      cert.initial_values[k] = cplx{};
      cert.initial_values[k + un] = cplx{};
    }
  }

  const cplx root_det = std::sqrt(det);
  const double coincidence = std::min(std::abs(p - 2.0 * root_det), std::abs(p + 2.0 * root_det));
  const bool all_zero = std::all_of(cert.initial_values.begin(), cert.initial_values.end(),
                                    [](cplx c) { return c == cplx{}; });

  if (coincidence <= kBoundaryBand) {
    // Coincident roots: y_m = (a + b m) z^m with |z| = 1.
    const cplx z = 0.5 * p;
    for (std::size_t k = 0; k < un; ++k) {
      cert.growth_coeffs.push_back(v[k + un] - z * v[k]);
      cert.decay_coeffs.push_back(v[k]);
    }
    cert.verdict = Verdict::Boundary;
    diag << "coincident transfer roots, |P_N(mu) -+ 2sqrt(D)| = " << coincidence;
    if (all_zero) diag << "; vector vanishes identically (trivial)";
    cert.diagnostics = diag.str();
    return cert;
  }

  const cplx gap = cert.z_plus - cert.z_minus;
  for (std::size_t k = 0; k < un; ++k) {
    const cplx y0 = v[k];
    const cplx y1 = v[k + un];
    cert.growth_coeffs.push_back((y1 - cert.z_minus * y0) / gap);
    cert.decay_coeffs.push_back((cert.z_plus * y0 - y1) / gap);
  }

  const double growth = cert.max_growth();
  const double zm = std::abs(cert.z_minus);
  const bool decays = zm <= 1.0 - std::sqrt(tol);
  const bool no_growth = growth <= tol * cert.growth_scale;

  if (all_zero) {
    cert.verdict = Verdict::NotEigenvalue;
    diag << "vector vanishes identically (trivial)";
  } else if (decays && no_growth) {
    cert.verdict = Verdict::Eigenvalue;
    const double ratio = zm * zm;
    double block = 0.0;
    cplx formal{};
    for (std::size_t k = 0; k < un; ++k) {
      block += std::norm(cert.initial_values[k]);
      formal += cert.initial_values[k] * cert.initial_values[k];
    }
    cert.norm_sq = block / (1.0 - ratio);
    cert.formal_sum_sq = formal / (1.0 - cert.z_minus * cert.z_minus);
    diag << "contracting: |z-| = " << zm << ", max|c+| = " << growth
         << ", formal sum phi^2 = " << cert.formal_sum_sq;
  } else {
    cert.verdict = Verdict::NotEigenvalue;
    if (!decays) diag << "no contracting transfer root: |z-| = " << zm;
    else diag << "growing component present: max|c+| = " << growth << " > " << tol * cert.growth_scale;
  }
  cert.diagnostics = diag.str();
  return cert;
}

Eigenvector eigenvector(const PhiSequence& seq, const Certificate& cert, std::size_t count,
                        double /*tol*/) {
  if (cert.verdict != Verdict::Eigenvalue)
    throw std::invalid_argument("eigenvector: certificate is not an eigenvalue");
  const auto n = static_cast<std::size_t>(seq.period());
  Eigenvector ev;
  ev.x.resize(count);
  // x_{k+Nm} = φ_k(μ) z₋^m
  std::vector<cplx> power(count / n + 2, cplx{1.0});
  for (std::size_t m = 1; m < power.size(); ++m) power[m] = power[m - 1] * cert.z_minus;
  for (std::size_t i = 0; i < count; ++i) ev.x[i] = cert.initial_values[i % n] * power[i / n];

  ev.norm_sq = cert.norm_sq;
  const double norm = std::sqrt(ev.norm_sq);
  ev.y.resize(count);
  for (std::size_t i = 0; i < count; ++i) ev.y[i] = ev.x[i] / norm;

  if (count >= 2) {
    const auto jx = apply_truncated(jacobi_blocks(seq.coeffs()), ev.x, count - 1);
    for (std::size_t r = 0; r + 1 < count; ++r)
      ev.residual = std::max(ev.residual, std::abs(jx[r] - cert.mu * ev.x[r]));
  }
  return ev;
}

namespace {

bool spectrum_less(const Certificate& x, const Certificate& y) {
  const bool ex = x.verdict == Verdict::Eigenvalue;
  const bool ey = y.verdict == Verdict::Eigenvalue;
  if (ex != ey) return ex;
  constexpr double kTie = 1e-9;
  if (std::abs(x.mu.real() - y.mu.real()) > kTie * (1.0 + std::abs(x.mu.real())))
    return x.mu.real() < y.mu.real();
  return x.mu.imag() < y.mu.imag();
}

}  // namespace

std::vector<Certificate> discrete_spectrum(const PhiSequence& seq, const CriticalReport& report,
                                           double tol) {
  std::vector<Certificate> out;
  out.reserve(report.critical_values.size());
  for (const auto& cv : report.critical_values) {
    Certificate c = certify(seq, cv.value, tol);
    c.source = cv.source();
    c.multiplicity = cv.multiplicity;
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), spectrum_less);
  return out;
}

std::vector<Certificate> discrete_spectrum(const PhiSequence& seq, double tol) {
  return discrete_spectrum(seq, critical_values(seq, tol), tol);
}

std::vector<cplx> SupportCurve::endpoints() const {
  std::vector<cplx> out;
  for (const auto& b : branches) {
    if (b.empty()) continue;
    out.push_back(b.front());
    out.push_back(b.back());
  }
  return out;
}

double SupportCurve::distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : branches) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, std::abs(z - b[j]));
      if (j + 1 == b.size()) continue;
      const cplx d = b[j + 1] - b[j];
      const double len2 = std::norm(d);
      if (len2 == 0.0) continue;
      const double t = (std::conj(d) * (z - b[j])).real() / len2;
      if (t > 0.0 && t < 1.0) best = std::min(best, std::abs(z - (b[j] + t * d)));
    }
  }
  return best;
}

SupportCurve support_sample(const PhiSequence& seq, int grid_size, double tol) {
  if (grid_size < 2) throw std::invalid_argument("support_sample: grid size must be >= 2");
  const CPoly& p = seq.pn();
  const int n = p.degree();
  SupportCurve sc;
  sc.period = seq.period();
  sc.branches.assign(static_cast<std::size_t>(n), {});
  RootOptions opts;
  opts.tol = tol;

  for (int j = 0; j < grid_size; ++j) {
    const double theta = std::numbers::pi * j / (grid_size - 1);
    sc.theta_grid.push_back(theta);
    const CPoly shifted = p - CPoly::constant(2.0 * std::cos(theta));
    std::vector<cplx> pts;
    for (const auto& r : roots(shifted, opts).roots)
      for (int m = 0; m < r.multiplicity; ++m) pts.push_back(r.value);

    if (j == 0) {
      for (std::size_t b = 0; b < pts.size(); ++b) sc.branches[b].push_back(pts[b]);
    } else {
      // Nearest-neighbour continuation: repeatedly take the globally
      // closest (branch tail, new point) pair.
      std::vector<bool> used_branch(pts.size(), false), used_point(pts.size(), false);
      for (std::size_t step = 0; step < pts.size(); ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bb = 0, bp = 0;
        for (std::size_t b = 0; b < pts.size(); ++b) {
          if (used_branch[b]) continue;
          for (std::size_t q = 0; q < pts.size(); ++q) {
            if (used_point[q]) continue;
            const double d = std::abs(sc.branches[b].back() - pts[q]);
            if (d < best) {
              best = d;
              bb = b;
              bp = q;
            }
          }
        }
        used_branch[bb] = true;
        used_point[bp] = true;
        sc.branches[bb].push_back(pts[bp]);
      }
    }
  }
  for (std::size_t j = 0; j < sc.theta_grid.size(); ++j)
    for (const auto& b : sc.branches) sc.points.push_back(b[j]);
  return sc;
}

RootSet truncation_oracle(const PhiSequence& seq, int n, double tol) {
  if (n < 1 || n > 64) throw std::invalid_argument("truncation_oracle: n must lie in [1, 64]");
  return roots(seq.phi(n), tol);
}

}  // namespace pjac
