#include "unext/statefam.hpp"

#include <algorithm>
#include <stdexcept>

namespace unext {

namespace {

void require_dims(int d, std::int64_t k) {
  if (d < 2) throw std::invalid_argument("dimension d must be >= 2");
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
}

}  // namespace

StateFamilyPoint StateFamilyPoint::make(Family family, int d, double param) {
  if (d < 2) throw std::invalid_argument("dimension d must be >= 2");
  require_probability(param, "family parameter");
  return {family, d, param};
}

double extendibility_threshold(Family family, int d, std::int64_t k) {
  require_dims(d, k);
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  switch (family) {
    case Family::Isotropic:
      return (1.0 + (dd - 1.0) / kk) / dd;
    case Family::Werner:
      return std::min(1.0, 0.5 * ((dd - 1.0) / kk + 1.0));
  }
  throw std::invalid_argument("unknown family");
}

double unextendible_divergence(const StateFamilyPoint& point, Divergence kind, std::int64_t k) {
  const auto checked = StateFamilyPoint::make(point.family, point.d, point.param);
  const double threshold = extendibility_threshold(checked.family, checked.d, k);
  if (checked.param <= threshold) return 0.0;
  // Above the threshold the closest extendible member sits on the boundary.
  return binary_divergence(kind, checked.param, threshold);
}

double unextendible_max_divergence_isotropic(double t, int d, std::int64_t k) {
  require_probability(t, "t");
  const double threshold = extendibility_threshold(Family::Isotropic, d, k);
  if (t <= threshold) return 0.0;
  return std::log2(t / threshold);
}

}  // namespace unext
