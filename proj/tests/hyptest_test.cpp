#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "unext/hyptest.hpp"

namespace {

using unext::BernoulliProductInstance;
using unext::FiniteDist;
using unext::HypothesisInstance;
using unext::LogProb;
using unext::dh_eps_bernoulli_product;
using unext::dh_eps_general;

FiniteDist dist(std::vector<double> w) { return FiniteDist::from_linear(w); }

std::vector<LogProb> logs(const std::vector<double>& w) {
  std::vector<LogProb> out;
  for (double x : w) out.push_back(LogProb::from_linear(x));
  return out;
}

TEST(NeymanPearson, SimpleBoundary) {
  // Accept outcome 0 fully (rho mass 0.8) then 1/2 of outcome 1: beta = 0.5 + 0.25.
  const auto inst = HypothesisInstance::make(dist({0.8, 0.2}), dist({0.5, 0.5}), 0.1);
  const auto test = unext::optimal_test(inst);
  EXPECT_NEAR(test.acceptance[0], 1.0, 1e-15);
  EXPECT_NEAR(test.acceptance[1], 0.5, 1e-12);
  EXPECT_NEAR(test.type2_error.linear(), 0.75, 1e-12);
  EXPECT_NEAR(dh_eps_general(inst), -std::log2(0.75), 1e-12);
}

TEST(NeymanPearson, IdentityGivesEpsOnly) {
  for (double eps : {0.0, 0.05, 0.3, 0.9}) {
    const auto d = dist({0.1, 0.2, 0.3, 0.4});
    EXPECT_NEAR(dh_eps_general(HypothesisInstance::make(d, d, eps)), std::log2(1.0 / (1.0 - eps)), 1e-12);
  }
}

TEST(NeymanPearson, DisjointSupportsGiveInfinity) {
  EXPECT_EQ(dh_eps_general(HypothesisInstance::make(dist({1.0, 0.0}), dist({0.0, 1.0}), 0.0)), unext::kInf);
}

TEST(NeymanPearson, ZeroRhoNeverAccepted) {
  const auto test = unext::neyman_pearson(logs({0.0, 1.0}), logs({0.0, 0.5}), 0.0);
  EXPECT_EQ(test.acceptance[0], 0.0);
  EXPECT_NEAR(test.type2_error.linear(), 0.5, 1e-15);
}

TEST(NeymanPearson, SubNormalizedSecondArgument) {
  const auto beta = unext::min_type2_error(logs({0.5, 0.5}), logs({0.1, 0.2}), 0.0);
  EXPECT_NEAR(beta.linear(), 0.3, 1e-15);
}

TEST(NeymanPearson, TieOrderDoesNotMatter) {
  std::vector<double> r = {0.1, 0.2, 0.3, 0.15, 0.25};
  std::vector<double> s = {0.05, 0.1, 0.15, 0.3, 0.4};  // first three share a ratio
  const double base = dh_eps_general(HypothesisInstance::make(dist(r), dist(s), 0.37));
  std::vector<std::size_t> perm(r.size());
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<double> rp, sp;
    for (auto i : perm) {
      rp.push_back(r[i]);
      sp.push_back(s[i]);
    }
    EXPECT_NEAR(dh_eps_general(HypothesisInstance::make(dist(rp), dist(sp), 0.37)), base, 1e-13);
  }
}

TEST(NeymanPearson, TypeOneConstraintIsTight) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r(6), s(6);
    for (auto& x : r) x = u(rng);
    for (auto& x : s) x = u(rng);
    const double rs = std::accumulate(r.begin(), r.end(), 0.0);
    const double ss = std::accumulate(s.begin(), s.end(), 0.0);
    for (auto& x : r) x /= rs;
    for (auto& x : s) x /= ss;
    const double eps = 0.9 * u(rng);
    const auto test = unext::neyman_pearson(logs(r), logs(s), eps);
    double accepted = 0.0, beta = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_GE(test.acceptance[i], 0.0);
      EXPECT_LE(test.acceptance[i], 1.0);
      accepted += r[i] * test.acceptance[i];
      beta += s[i] * test.acceptance[i];
    }
    EXPECT_NEAR(accepted, 1.0 - eps, 1e-12);
    EXPECT_NEAR(beta, test.type2_error.linear(), 1e-12);
  }
}

TEST(NeymanPearson, RejectsBadEps) {
  const auto d = dist({0.5, 0.5});
  EXPECT_THROW(HypothesisInstance::make(d, d, 1.0), std::invalid_argument);
  EXPECT_THROW(HypothesisInstance::make(d, d, -0.1), std::invalid_argument);
  EXPECT_THROW(HypothesisInstance::make(d, dist({1.0}), 0.1), std::invalid_argument);
}

TEST(BernoulliProduct, TwoUseReference) {
  // p=0.2, t=0.5: beta = 0.65625.
  EXPECT_NEAR(dh_eps_bernoulli_product(BernoulliProductInstance::make(2, 0.2, 0.5, 0.1)),
              0.6076825772212397, 1e-12);
}

TEST(BernoulliProduct, MatchesExpandedStrings) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 10;
    const double p = u(rng), t = u(rng), eps = 0.95 * u(rng);
    std::vector<double> r, s;
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
      double a = 1.0, b = 1.0;
      for (int i = 0; i < n; ++i) {
        const bool one = (m >> i) & 1U;
        a *= one ? p : 1.0 - p;
        b *= one ? 1.0 - t : t;
      }
      r.push_back(a);
      s.push_back(b);
    }
    const auto beta = unext::min_type2_error(logs(r), logs(s), eps);
    const double expanded = beta.is_zero() ? unext::kInf : -beta.log2();
    const double fast = dh_eps_bernoulli_product(BernoulliProductInstance::make(n, p, t, eps));
    if (std::isinf(expanded)) {
      EXPECT_EQ(fast, expanded);
    } else {
      EXPECT_NEAR(fast, expanded, 1e-10) << "n=" << n << " p=" << p << " t=" << t << " eps=" << eps;
    }
  }
}

TEST(BernoulliProduct, LargeBlocklengthIsFinite) {
  const double d = dh_eps_bernoulli_product(BernoulliProductInstance::make(2000, 0.15, 0.75, 0.05));
  EXPECT_TRUE(std::isfinite(d));
  EXPECT_GT(d, 0.0);
}

TEST(TypeClassTester, AgreesWithFreeFunction) {
  const unext::BernoulliTypeClassTester tester(7, 0.3, 0.2);
  for (double t : {0.1, 0.5, 0.75, 0.95}) {
    EXPECT_NEAR(tester.divergence(t), dh_eps_bernoulli_product(BernoulliProductInstance::make(7, 0.3, t, 0.2)),
                1e-13);
  }
}

}  // namespace
