#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "pjac/recur.hpp"

namespace pjac {

using Rng = std::mt19937_64;

/// Uniform point in the closed unit disk.
cplx random_in_disk(Rng& rng, double radius = 1.0);

/// α_k from the unit disk, β_k from the annulus 0.5 <= |β| <= 1.5. With
/// unit_det the β_k are rescaled by D^{-1/N} so that Πβ = 1.
CoefficientSet random_coefficient_set(Rng& rng, int period, bool unit_det = true);

/// Complex triple with components in the disk of the given radius.
std::array<cplx, 3> random_triple(Rng& rng, double radius = 2.0);

}  // namespace pjac
