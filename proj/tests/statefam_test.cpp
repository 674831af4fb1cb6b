#include <gtest/gtest.h>

#include <stdexcept>

#include "unext/statefam.hpp"

namespace {

using unext::Divergence;
using unext::Family;
using unext::StateFamilyPoint;
using unext::extendibility_threshold;
using unext::unextendible_divergence;

TEST(Thresholds, QubitValues) {
  EXPECT_EQ(extendibility_threshold(Family::Isotropic, 2, 2), 0.75);
  EXPECT_EQ(extendibility_threshold(Family::Werner, 2, 2), 0.75);
  EXPECT_NEAR(extendibility_threshold(Family::Werner, 3, 3), 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(extendibility_threshold(Family::Isotropic, 3, 2), 2.0 / 3.0, 1e-15);
}

TEST(Thresholds, WernerSaturatesAtOne) {
  // (d-1)/k >= 1 makes every Werner state k-extendible.
  EXPECT_EQ(extendibility_threshold(Family::Werner, 5, 2), 1.0);
  EXPECT_EQ(extendibility_threshold(Family::Werner, 3, 2), 1.0);
}

TEST(Thresholds, DecreaseInK) {
  for (const auto family : {Family::Isotropic, Family::Werner}) {
    for (int d = 2; d <= 5; ++d) {
      for (std::int64_t k = 2; k < 40; ++k) {
        EXPECT_GE(extendibility_threshold(family, d, k), extendibility_threshold(family, d, k + 1));
      }
    }
  }
}

TEST(Thresholds, LargeKLimit) {
  EXPECT_NEAR(extendibility_threshold(Family::Isotropic, 4, 1000000000), 0.25, 1e-8);
  EXPECT_NEAR(extendibility_threshold(Family::Werner, 4, 1000000000), 0.5, 1e-8);
}

TEST(Thresholds, RejectBadArguments) {
  EXPECT_THROW(extendibility_threshold(Family::Isotropic, 1, 2), std::invalid_argument);
  EXPECT_THROW(extendibility_threshold(Family::Isotropic, 2, 1), std::invalid_argument);
  EXPECT_THROW(StateFamilyPoint::make(Family::Werner, 2, 1.1), std::invalid_argument);
}

TEST(UnextendibleDivergence, ZeroInsideFreeSet) {
  const auto point = StateFamilyPoint::make(Family::Isotropic, 2, 0.7);
  EXPECT_EQ(unextendible_divergence(point, Divergence::kl(), 2), 0.0);
  EXPECT_EQ(unextendible_divergence(point, Divergence::max(), 2), 0.0);
}

TEST(UnextendibleDivergence, ReferenceValues) {
  EXPECT_NEAR(unextendible_divergence(StateFamilyPoint::make(Family::Isotropic, 2, 0.85), Divergence::kl(), 2),
              0.04294156967061682, 1e-12);
  EXPECT_NEAR(unextendible_divergence(StateFamilyPoint::make(Family::Werner, 2, 0.9), Divergence::kl(), 2),
              0.10453815576167822, 1e-12);
  EXPECT_NEAR(unext::unextendible_max_divergence_isotropic(0.9, 2, 2), 0.2630344058337938, 1e-12);
}

TEST(UnextendibleDivergence, NondecreasingInK) {
  // Larger k shrinks the free set.
  const auto point = StateFamilyPoint::make(Family::Isotropic, 3, 0.9);
  for (std::int64_t k = 2; k < 30; ++k) {
    EXPECT_LE(unextendible_divergence(point, Divergence::kl(), k),
              unextendible_divergence(point, Divergence::kl(), k + 1));
  }
}

}  // namespace
