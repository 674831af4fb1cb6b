#include "unext/hyptest.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace unext {

double require_eps(double eps) {
  if (std::isnan(eps) || eps < 0.0 || eps >= 1.0) {
    throw std::invalid_argument("eps must lie in [0, 1)");
  }
  return eps;
}

HypothesisInstance HypothesisInstance::make(FiniteDist rho, FiniteDist sigma, double eps) {
  if (rho.size() != sigma.size()) {
    throw std::invalid_argument("rho and sigma must have the same number of outcomes");
  }
  require_eps(eps);
  return {std::move(rho), std::move(sigma), eps};
}

BernoulliProductInstance BernoulliProductInstance::make(std::int64_t n, double p, double t,
                                                        double eps) {
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  require_probability(p, "p");
  require_probability(t, "t");
  require_eps(eps);
  return {n, p, t, eps};
}

namespace {

// Relative tolerance under which two log-likelihood ratios count as equal.
constexpr double kRatioTieTolerance = 1e-12;

bool same_ratio(double a, double b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= kRatioTieTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct Group {
  std::size_t begin;  // into the sorted order
  std::size_t end;
  double rho_mass;
  LogProb sigma_mass;
};

NeymanPearsonTest run_test(std::span<const LogProb> rho, std::span<const LogProb> sigma,
                           double eps, bool want_acceptance) {
  if (rho.size() != sigma.size()) {
    throw std::invalid_argument("rho and sigma must have the same number of outcomes");
  }
  require_eps(eps);

  NeymanPearsonTest result;
  if (want_acceptance) result.acceptance.assign(rho.size(), 0.0);

  std::vector<std::size_t> order;
  std::vector<double> key(rho.size());
  order.reserve(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].is_zero()) continue;
    key[i] = sigma[i].is_zero() ? kInf : rho[i].log2() - sigma[i].log2();
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

  std::vector<Group> groups;
  for (std::size_t pos = 0; pos < order.size();) {
    Group g{pos, pos, 0.0, LogProb::zero()};
    const double lead = key[order[pos]];
    while (g.end < order.size() && same_ratio(lead, key[order[g.end]])) {
      g.rho_mass += rho[order[g.end]].linear();
      g.sigma_mass += sigma[order[g.end]];
      ++g.end;
    }
    pos = g.end;
    groups.push_back(g);
  }

  const double target = 1.0 - eps;
  double accepted = 0.0;
  LogProb beta = LogProb::zero();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const Group& g = groups[gi];
    const bool last = gi + 1 == groups.size();
    double fraction = 1.0;
    if (accepted + g.rho_mass >= target || last) {
      fraction = std::clamp((target - accepted) / g.rho_mass, 0.0, 1.0);
    }
    if (fraction > 0.0) beta += LogProb::from_linear(fraction) * g.sigma_mass;
    if (want_acceptance) {
      for (std::size_t j = g.begin; j < g.end; ++j) result.acceptance[order[j]] = fraction;
    }
    accepted += g.rho_mass;
    if (fraction < 1.0 || accepted >= target) break;
  }
  result.type2_error = beta;
  return result;
}

double to_divergence(LogProb beta) { return beta.is_zero() ? kInf : -beta.log2(); }

}  // namespace

NeymanPearsonTest neyman_pearson(std::span<const LogProb> rho, std::span<const LogProb> sigma,
                                 double eps) {
  return run_test(rho, sigma, eps, true);
}

LogProb min_type2_error(std::span<const LogProb> rho, std::span<const LogProb> sigma, double eps) {
  return run_test(rho, sigma, eps, false).type2_error;
}

NeymanPearsonTest optimal_test(const HypothesisInstance& instance) {
  return neyman_pearson(instance.rho.weights(), instance.sigma.weights(), instance.eps);
}

double dh_eps_general(const HypothesisInstance& instance) {
  return to_divergence(
      min_type2_error(instance.rho.weights(), instance.sigma.weights(), instance.eps));
}

BernoulliTypeClassTester::BernoulliTypeClassTester(std::int64_t n, double p, double eps)
    : n_(n), eps_(require_eps(eps)) {
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  require_probability(p, "p");
  const auto un = static_cast<std::uint64_t>(n);
  log_binom_ = log_binomial_row(un);
  const LogProb zero_w = LogProb::from_linear(1.0 - p);
  const LogProb one_w = LogProb::from_linear(p);
  rho_classes_.reserve(un + 1);
  for (std::uint64_t l = 0; l <= un; ++l) {
    rho_classes_.push_back(LogProb::from_log2(log_binom_[l]) * zero_w.pow(un - l) * one_w.pow(l));
  }
}

double BernoulliTypeClassTester::divergence(LogProb w0, LogProb w1) const {
  const auto un = static_cast<std::uint64_t>(n_);
  std::vector<LogProb> sigma;
  sigma.reserve(un + 1);
  for (std::uint64_t l = 0; l <= un; ++l) {
    sigma.push_back(LogProb::from_log2(log_binom_[l]) * w0.pow(un - l) * w1.pow(l));
  }
  return to_divergence(min_type2_error(rho_classes_, sigma, eps_));
}

double BernoulliTypeClassTester::divergence(double t) const {
  require_probability(t, "t");
  return divergence(LogProb::from_linear(t), LogProb::from_linear(1.0 - t));
}

double dh_eps_bernoulli_product(const BernoulliProductInstance& instance) {
  const auto checked =
      BernoulliProductInstance::make(instance.n, instance.p, instance.t, instance.eps);
  return BernoulliTypeClassTester(checked.n, checked.p, checked.eps).divergence(checked.t);
}

}  // namespace unext
