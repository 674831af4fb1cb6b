#pragma once

// Closed-form k-extendibility thresholds and k-unextendible divergences for
// the isotropic and Werner families. Both families are diagonal in a fixed
// two-projector decomposition, so every divergence reduces to a binary one.

#include <cstdint>

#include "unext/numerics.hpp"

namespace unext {

enum class Family { Isotropic, Werner };

/// Isotropic: param is the weight t on the maximally entangled projector.
/// Werner: param is the weight p on the antisymmetric projector.
struct StateFamilyPoint {
  Family family = Family::Isotropic;
  int d = 2;
  double param = 0.0;

  /// Throws std::invalid_argument unless d >= 2 and param in [0, 1].
  static StateFamilyPoint make(Family family, int d, double param);
};

/// Largest parameter for which the family member is k-extendible.
/// Isotropic: (1/d)(1 + (d-1)/k). Werner: min(1, ((d-1)/k + 1)/2).
double extendibility_threshold(Family family, int d, std::int64_t k);

/// min over k-extendible family members of D(point || sigma); zero at or below the threshold.
double unextendible_divergence(const StateFamilyPoint& point, Divergence kind, std::int64_t k);

/// k-unextendible max-relative entropy of an isotropic state: max(0, log2(t / threshold)).
double unextendible_max_divergence_isotropic(double t, int d, std::int64_t k);

}  // namespace unext
