#include "pjac/corpus.hpp"

#include <cmath>
#include <numbers>

namespace pjac {

cplx random_in_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double t = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, t);
}

CoefficientSet random_coefficient_set(Rng& rng, int period, bool unit_det) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> alpha, beta;
  for (int k = 0; k < period; ++k) alpha.push_back(random_in_disk(rng));
  for (int k = 0; k < period; ++k)
    beta.push_back(std::polar(0.5 + u(rng), 2.0 * std::numbers::pi * u(rng)));
  if (unit_det) {
    cplx d{1.0};
    for (const auto& b : beta) d *= b;
    const cplx s = std::pow(d, -1.0 / period);
    for (auto& b : beta) b *= s;
  }
  return CoefficientSet(std::move(alpha), std::move(beta));
}

std::array<cplx, 3> random_triple(Rng& rng, double radius) {
  return {random_in_disk(rng, radius), random_in_disk(rng, radius), random_in_disk(rng, radius)};
}

}  // namespace pjac
