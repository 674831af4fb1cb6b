#pragma once

// Classical epsilon-hypothesis-testing divergence
//
//   D_h^eps(rho || sigma) = -log2 min { sum_i sigma_i l_i : sum_i rho_i l_i >= 1 - eps, l_i in [0,1] }
//
// evaluated exactly by the Neyman-Pearson test: outcomes are accepted in
// decreasing likelihood-ratio order, with a fractional acceptance on the
// boundary group. Outcomes sharing a likelihood ratio are merged first, so the
// result does not depend on their order.

#include <cstdint>
#include <span>
#include <vector>

#include "unext/numerics.hpp"

namespace unext {

struct HypothesisInstance {
  FiniteDist rho;
  FiniteDist sigma;
  double eps;

  /// Throws std::invalid_argument on length mismatch or eps outside [0, 1).
  static HypothesisInstance make(FiniteDist rho, FiniteDist sigma, double eps);
};

/// n-fold products of {1-p, p} (first argument) against {t, 1-t} (second argument).
struct BernoulliProductInstance {
  std::int64_t n;
  double p;
  double t;
  double eps;

  static BernoulliProductInstance make(std::int64_t n, double p, double t, double eps);
};

/// Optimal test: per-outcome acceptance probabilities and the resulting type-II error.
struct NeymanPearsonTest {
  std::vector<double> acceptance;
  LogProb type2_error;
};

/// Throws std::invalid_argument unless eps in [0, 1).
double require_eps(double eps);

/// Neyman-Pearson test on raw log-domain weights. sigma may be sub-normalized;
/// outcomes with rho_i = 0 are never accepted.
NeymanPearsonTest neyman_pearson(std::span<const LogProb> rho, std::span<const LogProb> sigma,
                                 double eps);

/// Minimal type-II error only; same semantics as neyman_pearson().
LogProb min_type2_error(std::span<const LogProb> rho, std::span<const LogProb> sigma, double eps);

NeymanPearsonTest optimal_test(const HypothesisInstance& instance);

/// -log2 beta*; +inf when beta* = 0.
double dh_eps_general(const HypothesisInstance& instance);

double dh_eps_bernoulli_product(const BernoulliProductInstance& instance);

/// Type-class evaluator for a fixed first argument {1-p, p}^n. Each call
/// compares against a per-site second argument {w0, w1} (which need not sum
/// to one) in O(n log n) using n + 1 classes weighted by C(n, l).
class BernoulliTypeClassTester {
 public:
  BernoulliTypeClassTester(std::int64_t n, double p, double eps);

  /// D_h^eps({1-p,p}^n || {w0,w1}^n).
  double divergence(LogProb w0, LogProb w1) const;
  /// Same, with {t, 1-t}.
  double divergence(double t) const;

  std::int64_t n() const { return n_; }
  double eps() const { return eps_; }

 private:
  std::int64_t n_;
  double eps_;
  std::vector<double> log_binom_;
  std::vector<LogProb> rho_classes_;
};

}  // namespace unext
