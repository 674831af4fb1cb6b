#include "unext/numerics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace unext {

double require_probability(double p, const char* what) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
  return p;
}

LogProb LogProb::from_linear(double value) {
  if (std::isnan(value) || value < 0.0) {
    throw std::invalid_argument("LogProb: value must be nonnegative");
  }
  if (value == 0.0) return zero();
  return LogProb(std::log2(value));
}

LogProb operator+(LogProb a, LogProb b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double hi = std::max(a.log2_, b.log2_);
  const double lo = std::min(a.log2_, b.log2_);
  if (hi == kInf) return LogProb(kInf);
  return LogProb(hi + std::log2(1.0 + std::exp2(lo - hi)));
}

LogProb LogProb::pow(std::uint64_t exponent) const {
  if (exponent == 0) return one();
  if (is_zero()) return zero();
  return LogProb(log2_ * static_cast<double>(exponent));
}

LogProb log_sum(std::span<const LogProb> terms) {
  double hi = -kInf;
  for (auto t : terms) hi = std::max(hi, t.log2());
  if (hi == -kInf) return LogProb::zero();
  if (hi == kInf) return LogProb::from_log2(kInf);
  double acc = 0.0;
  for (auto t : terms) {
    if (!t.is_zero()) acc += std::exp2(t.log2() - hi);
  }
  return LogProb::from_log2(hi + std::log2(acc));
}

FiniteDist FiniteDist::from_linear(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("FiniteDist: empty weight vector");
  std::vector<LogProb> w;
  w.reserve(weights.size());
  double sum = 0.0;
  for (double x : weights) {
    require_probability(x, "FiniteDist weight");
    sum += x;
    w.push_back(LogProb::from_linear(x));
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("FiniteDist: weights sum to " + std::to_string(sum));
  }
  return FiniteDist(std::move(w));
}

FiniteDist FiniteDist::from_log(std::vector<LogProb> weights) {
  if (weights.empty()) throw std::invalid_argument("FiniteDist: empty weight vector");
  const double sum = log_sum(weights).linear();
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("FiniteDist: weights sum to " + std::to_string(sum));
  }
  return FiniteDist(std::move(weights));
}

std::vector<double> FiniteDist::linear() const {
  std::vector<double> out;
  out.reserve(weights_.size());
  for (auto w : weights_) out.push_back(w.linear());
  return out;
}

Divergence Divergence::renyi(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || std::isinf(alpha)) {
    throw std::invalid_argument("Renyi order must lie in (0,1) U (1,inf)");
  }
  return {DivergenceKind::Renyi, alpha};
}

namespace {

// x * log2(x / y) with 0 log 0 = 0 and x > 0, y = 0 -> +inf.
double kl_term(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log2(x / y);
}

double renyi_binary(double alpha, double p, double q) {
  const double xs[2] = {p, 1.0 - p};
  const double ys[2] = {q, 1.0 - q};
  // Work with log2 of each summand x^a y^(1-a) to keep large orders finite.
  double logs[2];
  int count = 0;
  for (int i = 0; i < 2; ++i) {
    const double x = xs[i];
    const double y = ys[i];
    if (x == 0.0) continue;
    if (y == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    logs[count++] = alpha * std::log2(x) + (1.0 - alpha) * std::log2(y);
  }
  if (count == 0) return kInf;
  double hi = logs[0];
  for (int i = 1; i < count; ++i) hi = std::max(hi, logs[i]);
  double acc = 0.0;
  for (int i = 0; i < count; ++i) acc += std::exp2(logs[i] - hi);
  return (hi + std::log2(acc)) / (alpha - 1.0);
}

}  // namespace

double binary_divergence(Divergence kind, double p, double q) {
  require_probability(p, "p");
  require_probability(q, "q");
  switch (kind.kind) {
    case DivergenceKind::KL:
      return kl_term(p, q) + kl_term(1.0 - p, 1.0 - q);
    case DivergenceKind::Renyi:
      if (!(kind.alpha > 0.0) || kind.alpha == 1.0 || std::isinf(kind.alpha)) {
        throw std::invalid_argument("Renyi order must lie in (0,1) U (1,inf)");
      }
      if (p == q) return 0.0;
      return renyi_binary(kind.alpha, p, q);
    case DivergenceKind::Max: {
      double best = -kInf;
      const double xs[2] = {p, 1.0 - p};
      const double ys[2] = {q, 1.0 - q};
      for (int i = 0; i < 2; ++i) {
        if (xs[i] == 0.0) continue;
        if (ys[i] == 0.0) return kInf;
        best = std::max(best, std::log2(xs[i] / ys[i]));
      }
      return best;
    }
  }
  throw std::invalid_argument("unknown divergence kind");
}

double log_binomial(std::uint64_t n, std::uint64_t l) {
  if (l > n) throw std::invalid_argument("log_binomial: l > n");
  const std::uint64_t m = std::min(l, n - l);
  // Sum log2((n - m + i) / i); relative error stays near machine precision for n <= 1e4.
  double acc = 0.0;
  double comp = 0.0;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const double term = std::log2(static_cast<double>(n - m + i) / static_cast<double>(i)) - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc;
}

std::vector<double> log_binomial_row(std::uint64_t n) {
  std::vector<double> row(n + 1, 0.0);
  const std::uint64_t half = n / 2;
  for (std::uint64_t l = 0; l < half; ++l) {
    row[l + 1] = row[l] + std::log2(static_cast<double>(n - l) / static_cast<double>(l + 1));
  }
  for (std::uint64_t l = half + 1; l <= n; ++l) row[l] = row[n - l];
  return row;
}

}  // namespace unext
