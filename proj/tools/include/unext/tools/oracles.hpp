#pragma once

// Independent reference computations used by the test suites and by
// `unext check`. Each oracle follows a different route from the library
// code it validates: exact integers, brute-force enumeration, dense grids,
// or a generic LP.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unext/lp.hpp"
#include "unext/numerics.hpp"

namespace unext::oracle {

/// log2 C(n, l) from an exact 128-bit integer binomial. Requires n <= 120.
long double exact_log2_binomial(unsigned n, unsigned l);

/// Direct long-double binary KL divergence; +inf on support failure.
long double binary_kl(long double p, long double q);

/// Direct long-double binary Renyi divergence of order alpha.
long double binary_renyi(long double alpha, long double p, long double q);

/// Smallest lambda on a uniform grid over [0, lambda_max] with
/// {p,1-p} <= 2^lambda {q,1-q}; nullopt if no grid point qualifies.
std::optional<double> binary_dmax_grid(double p, double q, double lambda_max, std::size_t points);

/// min over q in [0, threshold] of log2 max(t/q, (1-t)/(1-q)) by a uniform
/// grid of `points` values plus both endpoints.
double isotropic_dmax_grid(double t, double threshold, std::size_t points = 100000);

/// D_h^eps by solving min sigma.l s.t. rho.l >= 1 - eps, 0 <= l <= 1 as an LP.
double dh_eps_via_lp(std::span<const double> rho, std::span<const double> sigma, double eps);

/// Full 2^n string distributions of {1-p,p}^n and {t,1-t}^n. Requires n <= 20.
struct ExpandedProduct {
  std::vector<double> rho;
  std::vector<double> sigma;
};
ExpandedProduct expand_bernoulli_product(int n, double p, double t);

/// Optimum of a bounded LP by enumerating every basis of active constraints.
/// Variables must have finite bounds. Returns nullopt when infeasible.
struct VertexOptimum {
  double objective;
  std::vector<double> point;
};
std::optional<VertexOptimum> vertex_enumeration(const LinearProgram& lp, double tol = 1e-9);

}  // namespace unext::oracle
