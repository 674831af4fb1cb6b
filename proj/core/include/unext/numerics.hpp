#pragma once

// Log-domain probability arithmetic and binary classical divergences.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace unext {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A nonnegative number stored as its base-2 logarithm. Exact zero is -inf.
class LogProb {
 public:
  constexpr LogProb() = default;

  static constexpr LogProb zero() { return LogProb(-kInf); }
  static constexpr LogProb one() { return LogProb(0.0); }
  static constexpr LogProb from_log2(double log2_value) { return LogProb(log2_value); }

  /// Throws std::invalid_argument for negative or NaN input.
  static LogProb from_linear(double value);

  constexpr double log2() const { return log2_; }
  double linear() const { return std::exp2(log2_); }
  constexpr bool is_zero() const { return log2_ == -kInf; }

  friend LogProb operator*(LogProb a, LogProb b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return LogProb(a.log2_ + b.log2_);
  }
  LogProb& operator*=(LogProb other) { return *this = *this * other; }

  /// log-sum-exp in base 2 with max subtraction.
  friend LogProb operator+(LogProb a, LogProb b);
  LogProb& operator+=(LogProb other) { return *this = *this + other; }

  /// Raise to a nonnegative integer power; 0^0 = 1.
  LogProb pow(std::uint64_t exponent) const;

  friend constexpr bool operator==(LogProb, LogProb) = default;
  friend constexpr auto operator<=>(LogProb a, LogProb b) { return a.log2_ <=> b.log2_; }

 private:
  constexpr explicit LogProb(double v) : log2_(v) {}
  double log2_ = -kInf;
};

/// Stable log-domain sum of many terms (max subtracted once).
LogProb log_sum(std::span<const LogProb> terms);

/// A finite probability vector held in log2 domain.
class FiniteDist {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates length >= 1, entries in [0, 1], and sum within 1e-12 of one.
  static FiniteDist from_linear(std::span<const double> weights);
  static FiniteDist from_log(std::vector<LogProb> weights);

  std::size_t size() const { return weights_.size(); }
  LogProb operator[](std::size_t i) const { return weights_[i]; }
  std::span<const LogProb> weights() const { return weights_; }
  std::vector<double> linear() const;

 private:
  explicit FiniteDist(std::vector<LogProb> w) : weights_(std::move(w)) {}
  std::vector<LogProb> weights_;
};

enum class DivergenceKind { KL, Renyi, Max };

/// Selects a classical divergence. Renyi carries its order alpha in (0,1) U (1,inf).
struct Divergence {
  DivergenceKind kind = DivergenceKind::KL;
  double alpha = 1.0;

  static constexpr Divergence kl() { return {DivergenceKind::KL, 1.0}; }
  static constexpr Divergence max() { return {DivergenceKind::Max, kInf}; }
  /// Throws std::invalid_argument unless alpha in (0,1) U (1,inf).
  static Divergence renyi(double alpha);
};

/// D({p,1-p} || {q,1-q}) in bits. +inf when the support condition fails.
/// Throws std::invalid_argument for NaN or values outside [0,1].
double binary_divergence(Divergence kind, double p, double q);

/// log2 C(n, l). Throws std::invalid_argument when l > n.
double log_binomial(std::uint64_t n, std::uint64_t l);

/// log2 C(n, l) for l = 0..n, built by the multiplicative recurrence.
std::vector<double> log_binomial_row(std::uint64_t n);

/// Checks that p is a probability; throws std::invalid_argument otherwise.
double require_probability(double p, const char* what);

}  // namespace unext
