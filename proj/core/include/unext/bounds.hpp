#pragma once

// Non-asymptotic upper bounds on entanglement-transmission rates over the
// qubit depolarizing and erasure channels when k-extendible channels are free.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "unext/lp.hpp"
#include "unext/numerics.hpp"

namespace unext {

enum class ChannelKind { Depolarizing, Erasure };

std::string to_string(ChannelKind kind);

/// p is the Pauli-error probability (depolarizing) or the erasure probability.
struct ChannelParams {
  ChannelKind kind = ChannelKind::Depolarizing;
  double p = 0.0;
  std::int64_t n = 1;
  double eps = 0.0;
  std::int64_t k = 2;

  /// Throws std::invalid_argument unless p in [0,1], eps in [0,1), n >= 1, k >= 2.
  static ChannelParams make(ChannelKind kind, double p, std::int64_t n, double eps, std::int64_t k);
};

/// k_used value for bounds evaluated in the k -> infinity limit.
inline constexpr std::int64_t kUnboundedK = 0;

enum class BoundStatus { Valid, Invalid };

std::string to_string(BoundStatus status);

enum class WitnessKind {
  None,
  IsotropicWeight,       // t: weight on the maximally entangled state per channel use
  ErasureCoefficients,   // c_0..c_n: per-string weights, sum_j C(n,j) c_j = 1
  SeparableMixture,      // s: non-erased weight of the separable erasure comparator
};

struct Witness {
  WitnessKind kind = WitnessKind::None;
  std::vector<double> values;
};

struct BoundResult {
  BoundStatus status = BoundStatus::Invalid;
  double log2M_total = kInf;
  double rate_per_use = kInf;
  double divergence_E = 0.0;
  Witness witness;
  std::int64_t k_used = 0;
  /// True when divergence_E was limited by log2 k + log2(1/(1-eps)).
  bool capped = false;

  bool valid() const { return status == BoundStatus::Valid; }
};

struct RateFragment {
  BoundStatus status = BoundStatus::Invalid;
  double log2M_total = kInf;
};

/// log2((k-1)/k) - log2(2^-E - 1/k); Invalid when 2^-E <= 1/k.
RateFragment rate_from_divergence(double E_total, std::int64_t k);

/// Upper limit on any k-unextendible eps-hypothesis-testing divergence.
double divergence_cap(std::int64_t k, double eps);

struct OptimizerOptions {
  /// Uniform grid points over the parameter interval before golden-section refinement.
  std::size_t grid_size = 10000;
};

BoundResult depolarizing_bound(const ChannelParams& params, const OptimizerOptions& options = {});

using Matrix = std::vector<std::vector<double>>;

/// Per-string transfer matrix: entry (u, v) is C(u,v) (1-1/k)^(u-v) (1/k)^(n-u)
/// for u >= v. It maps per-string weights c_v onto per-string weights b_u of
/// the k-extendible comparison state.
Matrix erasure_string_matrix(std::int64_t n, std::int64_t k);

/// Class-mass transfer matrix: entry (u, v) is C(n-v,u-v) (1-1/k)^(u-v) (1/k)^(n-u)
/// for u >= v. It maps class masses C(n,v) c_v onto class masses C(n,u) b_u.
Matrix erasure_class_matrix(std::int64_t n, std::int64_t k);

/// a_l = C(n,l) (1-p)^(n-l) p^l, the probability of l erasures.
std::vector<double> erasure_class_distribution(std::int64_t n, double p);

/// The erasure hypothesis-testing LP. Variable layout: c_0..c_n, alpha_0..alpha_n, y.
/// Maximizes y (1 - eps) - sum alpha subject to
///   alpha_i - y a_i + C(n,i) (M c)_i >= 0,  sum_j C(n,j) c_j = 1,  0 <= c_j <= 1,
/// with M the per-string matrix. The optimum is the largest type-II error
/// attainable over the comparison family.
struct ErasureLp {
  LinearProgram program;
  Matrix matrix;
  std::vector<double> class_probs;
  std::int64_t n = 0;

  std::size_t c_index(std::int64_t j) const { return static_cast<std::size_t>(j); }
  std::size_t alpha_index(std::int64_t i) const { return static_cast<std::size_t>(n + 1 + i); }
  std::size_t y_index() const { return static_cast<std::size_t>(2 * n + 2); }
};

ErasureLp erasure_lp_build(const ChannelParams& params);

struct ErasureDiagnostics {
  BoundResult result;
  /// True when the simplex optimum agrees with the refined witness bracket.
  /// Without a simplex optimum the witness starts from the best single class.
  bool lp_certified = false;
  LpSolution lp;
  /// -log2 of the LP optimum (inf when not certified).
  double lp_divergence = kInf;
  /// D_h recomputed by the Neyman-Pearson test against the witness state.
  double witness_divergence = kInf;
  /// Upper bound on (optimal type-II error) - (witness type-II error), from the
  /// optimal test against the witness.
  double beta_gap = kInf;
};

/// Solves the LP, then refines its witness by conditional-gradient steps with
/// exact log-domain Neyman-Pearson evaluation. Any witness in the family yields
/// a valid bound; beta_gap says how far from optimal it can be.
ErasureDiagnostics erasure_bound_detailed(const ChannelParams& params);
BoundResult erasure_bound(const ChannelParams& params);

/// k -> infinity comparator. Depolarizing: min over separable isotropic weights t <= 1/2.
/// Erasure: min over separable products s * iso(1/2) + (1 - s) * erased.
/// log2M_total equals the divergence itself; k in params is ignored.
BoundResult tbr_limit_bound(const ChannelParams& params, const OptimizerOptions& options = {});

/// k-unextendible max-relative entropy of the qubit depolarizing channel.
double emax_k_depolarizing(double p, std::int64_t k);

/// Bound for protocols interleaved with k-extendible channels:
/// log2((k-1)/k) - log2(2^(-n E_max) (1 - eps) - 1/k). divergence_E reports the
/// equivalent total n E_max + log2(1/(1 - eps)).
BoundResult adaptive_depolarizing_bound(const ChannelParams& params);

/// (1/n) log2(1 / (1 - k eps / (k - 1))). Throws std::invalid_argument unless eps in [0, 1 - 1/k).
double pretty_strong_converse(double eps, std::int64_t n, std::int64_t k);

struct OneShotRequirement {
  double info;  // eps-mutual information of the channel
  double eps;
};

struct AdaptiveRequirement {
  double info;  // max-mutual information of the channel
  double eps;
  std::int64_t n;
};

using MinKMode = std::variant<OneShotRequirement, AdaptiveRequirement>;

/// Smallest integer k >= 2 meeting the sufficient condition for a non-trivial bound.
/// Throws std::overflow_error if that k does not fit in 64 bits.
std::int64_t min_k_required(const MinKMode& mode);

/// eps log2 min(d, k) + (eps + 1) log2(eps + 1) - eps log2 eps.
double continuity_bound(double eps, int d, std::int64_t k);

enum class BoundMethod { HypothesisTesting, Adaptive };

/// Evaluates the bound for every k in k_set and keeps the smallest valid log2M_total
/// (ties go to the smaller k). Invalid when every k is invalid.
BoundResult best_over_k(const ChannelParams& params, std::span<const std::int64_t> k_set,
                        BoundMethod method = BoundMethod::HypothesisTesting,
                        const OptimizerOptions& options = {});

/// Single-k evaluation with the same dispatch as best_over_k.
BoundResult evaluate_bound(const ChannelParams& params,
                           BoundMethod method = BoundMethod::HypothesisTesting,
                           const OptimizerOptions& options = {});

}  // namespace unext
