#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "unext/bounds.hpp"
#include "unext/hyptest.hpp"
#include "unext/statefam.hpp"
#include "unext/tools/oracles.hpp"

namespace {

using namespace unext;

TEST(Oracles, ExactBinomial) {
  for (unsigned n : {1u, 10u, 50u, 100u}) {
    for (unsigned l = 0; l <= n; l += 3) {
      EXPECT_NEAR(log_binomial(n, l), static_cast<double>(oracle::exact_log2_binomial(n, l)),
                  1e-12 * std::max(1.0, log_binomial(n, l)));
    }
  }
}

TEST(Oracles, DivergencesInExtendedPrecision) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const double p = u(rng), q = u(rng);
    EXPECT_NEAR(binary_divergence(Divergence::kl(), p, q), static_cast<double>(oracle::binary_kl(p, q)), 1e-12);
    for (double a : {0.3, 0.7, 1.5, 4.0}) {
      EXPECT_NEAR(binary_divergence(Divergence::renyi(a), p, q),
                  static_cast<double>(oracle::binary_renyi(a, p, q)), 1e-11);
    }
  }
}

TEST(Oracles, MaxDivergenceLambdaGrid) {
  const auto grid = oracle::binary_dmax_grid(0.85, 0.75, 1.0, 1000001);
  ASSERT_TRUE(grid.has_value());
  EXPECT_NEAR(binary_divergence(Divergence::max(), 0.85, 0.75), *grid, 2e-6);
}

TEST(Oracles, IsotropicMaxGrid) {
  EXPECT_NEAR(unextendible_max_divergence_isotropic(0.9, 2, 2), oracle::isotropic_dmax_grid(0.9, 0.75), 1e-9);
}

TEST(Oracles, NeymanPearsonAgainstLp) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<double> r(n), s(n);
    double rs = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = u(rng) + 0.01;
      s[i] = u(rng) + 0.01;
      rs += r[i];
      ss += s[i];
    }
    for (auto& x : r) x /= rs;
    for (auto& x : s) x /= ss;
    const double eps = 0.9 * u(rng);
    EXPECT_NEAR(dh_eps_general(HypothesisInstance::make(FiniteDist::from_linear(r), FiniteDist::from_linear(s), eps)),
                oracle::dh_eps_via_lp(r, s, eps), 1e-8);
  }
}

TEST(Oracles, ErasureLpAgainstVertices) {
  auto built = erasure_lp_build(ChannelParams::make(ChannelKind::Erasure, 0.35, 1, 0.05, 2));
  const auto sol = solve_lp(built.program);
  for (auto& u : built.program.upper) u = std::min(u, 16.0);
  const auto v = oracle::vertex_enumeration(built.program);
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(sol.objective_value, v->objective, 1e-9);
}

TEST(Oracles, VertexEnumerationNeedsBounds) {
  auto lp = LinearProgram::with_vars(1);
  EXPECT_THROW(oracle::vertex_enumeration(lp), std::invalid_argument);
}

}  // namespace
