#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pjac/cpoly.hpp"
#include "pjac/error.hpp"

namespace pjac {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner value and derivative together, plus the running bound
// sum |a_k| |z|^k used for the rounding-error stopping test.
struct HornerResult {
  cplx value;
  cplx deriv;
  double abs_bound;
};

HornerResult horner(std::span<const cplx> a, cplx z) {
  cplx p{}, dp{};
  double bound = 0.0;
  const double az = std::abs(z);
  for (std::size_t k = a.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
    bound = bound * az + std::abs(a[k]);
  }
  return {p, dp, bound};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Normwise scale for the Taylor coefficient of order j at z:
// max|a| sum_k C(k, j) |z|^(k-j). Componentwise scaling would compare
// rounding-noise coefficients against themselves near z = 0.
double taylor_scale(std::span<const cplx> a, cplx z, int j) {
  const double az = std::abs(z);
  double amax = 0.0;
  for (const auto& c : a) amax = std::max(amax, std::abs(c));
  double s = 0.0;
  for (int k = j; k < static_cast<int>(a.size()); ++k) s += binomial(k, j) * std::pow(az, k - j);
  return amax * s;
}

std::vector<cplx> aberth(std::span<const cplx> a, const RootOptions& opts) {
  const int n = static_cast<int>(a.size()) - 1;
  const cplx lead = a.back();
  double cauchy = 0.0;
  for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(a[static_cast<std::size_t>(k)] / lead));
  const double radius = 1.0 + cauchy;

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto h = horner(a, z[i]);
      if (std::abs(h.value) <= 4.0 * kEps * h.abs_bound) {
        done[i] = true;
        continue;
      }
      all_done = false;
      cplx sum{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) {
          const cplx d = z[i] - z[j];
          if (d != cplx{}) sum += 1.0 / d;
        }
      cplx step;
      if (h.deriv == cplx{}) {
        step = std::polar(1e-3 * (1.0 + std::abs(z[i])), 1.0 + static_cast<double>(i));
      } else {
        const cplx w = h.value / h.deriv;
        step = w / (1.0 - w * sum);
      }
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return z;
  }

  double worst = 0.0;
  for (const auto& zi : z) {
    const auto h = horner(a, zi);
    worst = std::max(worst, std::abs(h.value) / std::max(h.abs_bound, 1e-300));
  }
  // Clusters around a multiple root stall above the rounding bound but are
  // still good to the caller's tolerance.
  if (worst <= opts.tol) return z;
  throw RootFinderError("Aberth iteration did not converge", z, worst);
}

struct Cluster {
  cplx centroid;
  int multiplicity;
};

// Union of clusters a and b, weighted by multiplicity.
Cluster merged(const Cluster& a, const Cluster& b) {
  const int m = a.multiplicity + b.multiplicity;
  return {(static_cast<double>(a.multiplicity) * a.centroid +
           static_cast<double>(b.multiplicity) * b.centroid) /
              static_cast<double>(m),
          m};
}

// True when p looks like it has an m-fold root at c: all Taylor
// coefficients below order m vanish to backward error tol.
bool consistent_multiple_root(std::span<const cplx> a, const Cluster& c, double tol) {
  const CPoly p(std::vector<cplx>(a.begin(), a.end()));
  for (int j = 0; j < c.multiplicity; ++j) {
    if (std::abs(p.taylor(c.centroid, j)) > tol * taylor_scale(a, c.centroid, j)) return false;
  }
  return true;
}

std::vector<Cluster> cluster_roots(std::span<const cplx> a, const std::vector<cplx>& z,
                                   double tol, double radius_coeff) {
  std::vector<Cluster> cl;
  cl.reserve(z.size());
  for (const auto& zi : z) cl.push_back({zi, 1});

  auto merge_pass = [&](auto&& accept) {
    bool changed = true;
    while (changed) {
      changed = false;
      double best = std::numeric_limits<double>::infinity();
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t j = i + 1; j < cl.size(); ++j) {
          const double d = std::abs(cl[i].centroid - cl[j].centroid);
          if (d < best && accept(cl[i], cl[j], d)) {
            best = d;
            bi = i;
            bj = j;
          }
        }
      if (std::isfinite(best)) {
        cl[bi] = merged(cl[bi], cl[bj]);
        cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(bj));
        changed = true;
      }
    }
  };

  // Roots closer than sqrt(tol)(1+|z|) are one root.
  merge_pass([&](const Cluster& x, const Cluster& y, double d) {
    return d <= radius_coeff * (1.0 + std::max(std::abs(x.centroid), std::abs(y.centroid)));
  });
  // Wider spreads are accepted only if p has the matching multiple root.
  // A k-fold root splits into k points with no consistent sub-cluster, so
  // grow a group around each cluster, nearest first.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cl.size() && !changed; ++i) {
      const double window = 0.05 * (1.0 + std::abs(cl[i].centroid));
      std::vector<std::size_t> near;
      for (std::size_t j = 0; j < cl.size(); ++j)
        if (j != i && std::abs(cl[j].centroid - cl[i].centroid) <= window) near.push_back(j);
      std::sort(near.begin(), near.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(cl[x].centroid - cl[i].centroid) < std::abs(cl[y].centroid - cl[i].centroid);
      });
      Cluster group = cl[i];
      for (std::size_t used = 0; used < near.size(); ++used) {
        group = merged(group, cl[near[used]]);
        if (!consistent_multiple_root(a, group, tol)) continue;
        std::vector<std::size_t> gone(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(used + 1));
        std::sort(gone.rbegin(), gone.rend());
        cl[i] = group;
        for (std::size_t j : gone) cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return cl;
}

// Newton on p^(m-1), for which an m-fold root of p is simple.
cplx polish(const CPoly& p, cplx z, int multiplicity, int steps) {
  CPoly f = p;
  for (int k = 1; k < multiplicity; ++k) f = f.derivative();
  const CPoly df = f.derivative();
  double best = std::abs(f(z));
  for (int s = 0; s < steps && best > 0.0; ++s) {
    const cplx d = df(z);
    if (d == cplx{}) break;
    const cplx cand = z - f(z) / d;
    const double v = std::abs(f(cand));
    if (!(v < best)) break;
    best = v;
    z = cand;
  }
  return z;
}

bool root_less(const Root& x, const Root& y) {
  constexpr double kTie = 1e-9;
  if (std::abs(x.value.real() - y.value.real()) > kTie * (1.0 + std::abs(x.value.real())))
    return x.value.real() < y.value.real();
  return x.value.imag() < y.value.imag();
}

}  // namespace

RootSet roots(const CPoly& p, double tol) {
  RootOptions o;
  o.tol = tol;
  return roots(p, o);
}

RootSet roots(const CPoly& p, const RootOptions& opts) {
  if (p.degree() < 1) throw std::invalid_argument("roots: polynomial degree must be >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("roots: tolerance must be positive");

  RootSet out;
  out.cluster_radius = std::sqrt(opts.tol);

  // Exact zero roots.
  const auto all = p.coeffs();
  std::size_t zeros = 0;
  while (all[zeros] == cplx{}) ++zeros;
  Cluster zero_cluster{cplx{}, static_cast<int>(zeros)};

  const std::span<const cplx> a = all.subspan(zeros);
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 1) {
    out.roots.push_back({-a[0] / a[1], 1});
  } else if (n > 1) {
    const auto z = aberth(a, opts);
    const CPoly reduced(std::vector<cplx>(a.begin(), a.end()));
    for (const auto& c : cluster_roots(a, z, opts.tol, out.cluster_radius)) {
      // A cluster next to exact zero roots may belong to the same multiple root.
      if (zeros > 0 && std::abs(c.centroid) <= 0.05) {
        const Cluster joined = merged(zero_cluster, c);
        if (std::abs(c.centroid) <= out.cluster_radius || consistent_multiple_root(all, joined, opts.tol)) {
          zero_cluster.multiplicity = joined.multiplicity;
          continue;
        }
      }
      cplx v = c.multiplicity == 1 ? polish(reduced, c.centroid, 1, opts.polish_steps)
                                   : polish(reduced, c.centroid, c.multiplicity, opts.polish_steps);
      // Polishing must not walk out of the cluster it started from.
      if (std::abs(v - c.centroid) > 0.05 * (1.0 + std::abs(c.centroid))) v = c.centroid;
      out.roots.push_back({v, c.multiplicity});
    }
  }

  if (zero_cluster.multiplicity > 0) out.roots.push_back({cplx{}, zero_cluster.multiplicity});
  std::sort(out.roots.begin(), out.roots.end(), root_less);
  for (const auto& r : out.roots) out.residual = std::max(out.residual, std::abs(p(r.value)));
  return out;
}

}  // namespace pjac
