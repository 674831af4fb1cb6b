#include "unext/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unext/hyptest.hpp"
#include "unext/statefam.hpp"

namespace unext {

std::string to_string(ChannelKind kind) {
  return kind == ChannelKind::Depolarizing ? "depolarizing" : "erasure";
}

std::string to_string(BoundStatus status) {
  return status == BoundStatus::Valid ? "valid" : "invalid";
}

ChannelParams ChannelParams::make(ChannelKind kind, double p, std::int64_t n, double eps,
                                  std::int64_t k) {
  require_probability(p, "channel parameter p");
  require_eps(eps);
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
  return {kind, p, n, eps, k};
}

namespace {

ChannelParams checked(const ChannelParams& p) {
  return ChannelParams::make(p.kind, p.p, p.n, p.eps, p.k);
}

double log2_one_minus_inv(std::int64_t k) {
  return std::log1p(-1.0 / static_cast<double>(k)) / std::log(2.0);
}

struct Minimum {
  double arg;
  double value;
};

// Uniform grid over [lo, hi] (both ends included), then golden-section search
// inside the cell pair around the best grid point. Keeps the best point seen.
template <class F>
Minimum grid_golden_minimize(F&& f, double lo, double hi, std::size_t grid) {
  grid = std::max<std::size_t>(grid, 2);
  Minimum best{lo, f(lo)};
  std::size_t best_i = 0;
  const double step = (hi - lo) / static_cast<double>(grid - 1);
  for (std::size_t i = 1; i < grid; ++i) {
    const double x = i + 1 == grid ? hi : lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  double a = best_i == 0 ? lo : lo + step * static_cast<double>(best_i - 1);
  double b = best_i + 1 >= grid ? hi : lo + step * static_cast<double>(best_i + 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 100 && b - a > 1e-15; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    if (f1 < best.value) best = {x1, f1};
    if (f2 < best.value) best = {x2, f2};
  }
  return best;
}

BoundResult assemble(double E, std::int64_t k, std::int64_t n, double eps, Witness witness) {
  BoundResult r;
  const double cap = divergence_cap(k, eps);
  // A normalized comparator has beta <= 1; anything below zero is roundoff.
  E = std::max(E, 0.0);
  r.capped = E > cap;
  r.divergence_E = std::min(E, cap);
  r.witness = std::move(witness);
  r.k_used = k;
  const RateFragment frag = rate_from_divergence(r.divergence_E, k);
  r.status = frag.status;
  r.log2M_total = frag.log2M_total;
  r.rate_per_use = frag.status == BoundStatus::Valid ? frag.log2M_total / static_cast<double>(n)
                                                     : kInf;
  return r;
}

BoundResult limit_result(double E, std::int64_t n, Witness witness) {
  BoundResult r;
  E = std::max(E, 0.0);
  r.divergence_E = E;
  r.witness = std::move(witness);
  r.k_used = kUnboundedK;
  r.status = std::isfinite(E) ? BoundStatus::Valid : BoundStatus::Invalid;
  r.log2M_total = E;
  r.rate_per_use = std::isfinite(E) ? E / static_cast<double>(n) : kInf;
  return r;
}

// log2 of C(a, b) for a >= b >= 0 from precomputed rows.
struct BinomialTable {
  explicit BinomialTable(std::int64_t n) {
    rows.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t a = 0; a <= n; ++a) rows.push_back(log_binomial_row(static_cast<std::uint64_t>(a)));
  }
  double operator()(std::int64_t a, std::int64_t b) const {
    return rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  std::vector<std::vector<double>> rows;
};

// log2 of the per-string entry C(u,v) (1-1/k)^(u-v) (1/k)^(n-u).
double log_string_entry(const BinomialTable& binom, std::int64_t n, std::int64_t k,
                        std::int64_t u, std::int64_t v) {
  const double log_keep = log2_one_minus_inv(k);
  const double log_inv_k = -std::log2(static_cast<double>(k));
  return binom(u, v) + static_cast<double>(u - v) * log_keep +
         static_cast<double>(n - u) * log_inv_k;
}

void require_erasure_dims(std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
}

}  // namespace

RateFragment rate_from_divergence(double E_total, std::int64_t k) {
  if (std::isnan(E_total) || E_total < 0.0) {
    throw std::invalid_argument("divergence must be nonnegative");
  }
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
  // Scaled by k so that E = 0 maps to exactly zero.
  const auto kd = static_cast<double>(k);
  const double arg = kd * std::exp2(-E_total) - 1.0;
  if (!(arg > 0.0)) return {BoundStatus::Invalid, kInf};
  return {BoundStatus::Valid, std::log2(kd - 1.0) - std::log2(arg)};
}

double divergence_cap(std::int64_t k, double eps) {
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
  require_eps(eps);
  return std::log2(static_cast<double>(k)) - std::log1p(-eps) / std::log(2.0);
}

BoundResult depolarizing_bound(const ChannelParams& params, const OptimizerOptions& options) {
  const ChannelParams cp = checked(params);
  if (cp.kind != ChannelKind::Depolarizing) {
    throw std::invalid_argument("depolarizing_bound needs a depolarizing channel");
  }
  const double threshold = extendibility_threshold(Family::Isotropic, 2, cp.k);
  // Output of one use on a maximally entangled input: weight 1 - p on the entangled projector.
  const BernoulliTypeClassTester tester(cp.n, cp.p, cp.eps);
  const Minimum best = grid_golden_minimize([&](double t) { return tester.divergence(t); }, 0.0,
                                            threshold, options.grid_size);
  return assemble(best.value, cp.k, cp.n, cp.eps, {WitnessKind::IsotropicWeight, {best.arg}});
}

Matrix erasure_string_matrix(std::int64_t n, std::int64_t k) {
  require_erasure_dims(n, k);
  const BinomialTable binom(n);
  const auto size = static_cast<std::size_t>(n + 1);
  Matrix m(size, std::vector<double>(size, 0.0));
  for (std::int64_t u = 0; u <= n; ++u) {
    for (std::int64_t v = 0; v <= u; ++v) {
      m[u][v] = std::exp2(log_string_entry(binom, n, k, u, v));
    }
  }
  return m;
}

Matrix erasure_class_matrix(std::int64_t n, std::int64_t k) {
  require_erasure_dims(n, k);
  const BinomialTable binom(n);
  const double log_keep = log2_one_minus_inv(k);
  const double log_inv_k = -std::log2(static_cast<double>(k));
  const auto size = static_cast<std::size_t>(n + 1);
  Matrix m(size, std::vector<double>(size, 0.0));
  for (std::int64_t u = 0; u <= n; ++u) {
    for (std::int64_t v = 0; v <= u; ++v) {
      m[u][v] = std::exp2(binom(n - v, u - v) + static_cast<double>(u - v) * log_keep +
                          static_cast<double>(n - u) * log_inv_k);
    }
  }
  return m;
}

std::vector<double> erasure_class_distribution(std::int64_t n, double p) {
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  require_probability(p, "erasure probability");
  const auto row = log_binomial_row(static_cast<std::uint64_t>(n));
  const LogProb keep = LogProb::from_linear(1.0 - p);
  const LogProb erase = LogProb::from_linear(p);
  std::vector<double> a;
  a.reserve(row.size());
  for (std::int64_t l = 0; l <= n; ++l) {
    const auto ul = static_cast<std::uint64_t>(l);
    const auto un = static_cast<std::uint64_t>(n);
    a.push_back((LogProb::from_log2(row[ul]) * keep.pow(un - ul) * erase.pow(ul)).linear());
  }
  return a;
}

ErasureLp erasure_lp_build(const ChannelParams& params) {
  const ChannelParams cp = checked(params);
  if (cp.kind != ChannelKind::Erasure) {
    throw std::invalid_argument("erasure_lp_build needs an erasure channel");
  }
  const std::int64_t n = cp.n;
  ErasureLp out;
  out.n = n;
  out.matrix = erasure_string_matrix(n, cp.k);
  out.class_probs = erasure_class_distribution(n, cp.p);

  const BinomialTable binom(n);
  const int vars = static_cast<int>(2 * n + 3);
  LinearProgram lp = LinearProgram::with_vars(vars);
  lp.objective[out.y_index()] = 1.0 - cp.eps;
  for (std::int64_t i = 0; i <= n; ++i) {
    lp.objective[out.alpha_index(i)] = -1.0;
    lp.upper[out.c_index(i)] = 1.0;
  }
  for (std::int64_t i = 0; i <= n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(vars), 0.0);
    row[out.alpha_index(i)] = 1.0;
    row[out.y_index()] = -out.class_probs[static_cast<std::size_t>(i)];
    // Class i holds C(n,i) strings, each carrying (M c)_i.
    for (std::int64_t j = 0; j <= i; ++j) {
      row[out.c_index(j)] = std::exp2(binom(n, i) + log_string_entry(binom, n, cp.k, i, j));
    }
    lp.add_constraint(std::move(row), Relation::GreaterEq, 0.0);
  }
  std::vector<double> norm(static_cast<std::size_t>(vars), 0.0);
  for (std::int64_t j = 0; j <= n; ++j) norm[out.c_index(j)] = std::exp2(binom(n, j));
  lp.add_constraint(std::move(norm), Relation::Equal, 1.0);

  out.program = std::move(lp);
  return out;
}

namespace {

// Class-mass comparison family: sigma(w) = M w over class masses w in the simplex.
class ErasureFamily {
 public:
  ErasureFamily(std::int64_t n, std::int64_t k, const std::vector<double>& class_probs, double eps)
      : size_(static_cast<std::size_t>(n + 1)), eps_(eps), log_m_(size_ * size_, -kInf) {
    const BinomialTable binom(n);
    const double log_keep = log2_one_minus_inv(k);
    const double log_inv_k = -std::log2(static_cast<double>(k));
    for (std::int64_t u = 0; u <= n; ++u) {
      for (std::int64_t v = 0; v <= u; ++v) {
        log_m_[idx(u, v)] = binom(n - v, u - v) + static_cast<double>(u - v) * log_keep +
                            static_cast<double>(n - u) * log_inv_k;
      }
    }
    for (double a : class_probs) rho_.push_back(LogProb::from_linear(a));
  }

  std::size_t size() const { return size_; }

  std::vector<LogProb> sigma(const std::vector<LogProb>& w) const {
    std::vector<LogProb> out(size_);
    std::vector<LogProb> terms;
    for (std::size_t u = 0; u < size_; ++u) {
      terms.clear();
      for (std::size_t v = 0; v <= u; ++v) terms.push_back(LogProb::from_log2(log_m_[idx(u, v)]) * w[v]);
      out[u] = log_sum(terms);
    }
    return out;
  }

  std::vector<LogProb> column(std::size_t v) const {
    std::vector<LogProb> out(size_, LogProb::zero());
    for (std::size_t u = v; u < size_; ++u) out[u] = LogProb::from_log2(log_m_[idx(u, v)]);
    return out;
  }

  LogProb beta(const std::vector<LogProb>& sigma) const { return min_type2_error(rho_, sigma, eps_); }

  NeymanPearsonTest test(const std::vector<LogProb>& sigma) const { return neyman_pearson(rho_, sigma, eps_); }

  // (M^T lambda)_v: type-II error of the test against the pure class v.
  std::vector<double> column_errors(const std::vector<double>& lambda) const {
    std::vector<double> out(size_, 0.0);
    for (std::size_t v = 0; v < size_; ++v) {
      std::vector<LogProb> terms;
      for (std::size_t u = v; u < size_; ++u) {
        terms.push_back(LogProb::from_linear(lambda[u]) * LogProb::from_log2(log_m_[idx(u, v)]));
      }
      out[v] = log_sum(terms).linear();
    }
    return out;
  }

 private:
  std::size_t idx(std::int64_t u, std::int64_t v) const {
    return static_cast<std::size_t>(u) * size_ + static_cast<std::size_t>(v);
  }
  std::size_t idx(std::size_t u, std::size_t v) const { return u * size_ + v; }

  std::size_t size_;
  double eps_;
  std::vector<double> log_m_;
  std::vector<LogProb> rho_;
};

std::vector<LogProb> mix(const std::vector<LogProb>& x, const std::vector<LogProb>& y, double gamma) {
  const LogProb keep = LogProb::from_linear(1.0 - gamma);
  const LogProb take = LogProb::from_linear(gamma);
  std::vector<LogProb> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = keep * x[i] + take * y[i];
  return out;
}

struct WitnessSearch {
  std::vector<LogProb> w;
  LogProb beta;
  double gap = kInf;
};

// Conditional gradient on the concave map w -> beta(M w). Each step moves toward
// the class that the current optimal test handles worst, with an exact line search.
WitnessSearch refine_witness(const ErasureFamily& fam, std::vector<LogProb> w, int max_steps) {
  std::vector<LogProb> sig = fam.sigma(w);
  LogProb beta = fam.beta(sig);
  double gap = kInf;
  for (int step = 0; step < max_steps; ++step) {
    const NeymanPearsonTest t = fam.test(sig);
    const std::vector<double> g = fam.column_errors(t.acceptance);
    const auto j = static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin());
    const double current = t.type2_error.linear();
    gap = std::max(0.0, g[j] - current);
    if (gap <= 1e-14 * std::max(current, 1e-300)) break;

    const std::vector<LogProb> target = fam.column(j);
    auto value = [&](double gamma) { return fam.beta(mix(sig, target, gamma)).linear(); };
    const Minimum m = grid_golden_minimize([&](double gamma) { return -value(gamma); }, 0.0, 1.0, 16);
    if (!(-m.value > beta.linear())) break;
    const double gamma = m.arg;
    sig = mix(sig, target, gamma);
    std::vector<LogProb> e(w.size(), LogProb::zero());
    e[j] = LogProb::one();
    w = mix(w, e, gamma);
    beta = fam.beta(sig);
  }
  return {std::move(w), beta, gap};
}

}  // namespace

ErasureDiagnostics erasure_bound_detailed(const ChannelParams& params) {
  const ChannelParams cp = checked(params);
  const ErasureLp built = erasure_lp_build(cp);
  ErasureDiagnostics diag;
  bool lp_solved = false;
  try {
    diag.lp = solve_lp(built.program);
    lp_solved = diag.lp.status == LpStatus::Optimal;
  } catch (const NumericalFailure&) {
    lp_solved = false;
  }

  const std::int64_t n = cp.n;
  const auto size = static_cast<std::size_t>(n + 1);
  const auto binom_row = log_binomial_row(static_cast<std::uint64_t>(n));
  const ErasureFamily fam(n, cp.k, built.class_probs, cp.eps);

  // Starting class masses: the LP witness projected onto the simplex, or else the best pure class.
  std::vector<LogProb> start(size, LogProb::zero());
  bool have_start = false;
  if (lp_solved) {
    LogProb total = LogProb::zero();
    for (std::size_t j = 0; j < size; ++j) {
      const double c = std::clamp(diag.lp.primal[built.c_index(static_cast<std::int64_t>(j))], 0.0, 1.0);
      start[j] = LogProb::from_linear(c) * LogProb::from_log2(binom_row[j]);
      total += start[j];
    }
    if (!total.is_zero()) {
      for (auto& x : start) x = LogProb::from_log2(x.log2() - total.log2());
      have_start = true;
    }
  }
  if (!have_start) {
    LogProb best = LogProb::zero();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < size; ++j) {
      const LogProb b = fam.beta(fam.column(j));
      if (j == 0 || b > best) {
        best = b;
        arg = j;
      }
    }
    start[arg] = LogProb::one();
  }

  const WitnessSearch found = refine_witness(fam, std::move(start), 200);
  diag.beta_gap = found.gap;
  diag.witness_divergence = found.beta.is_zero() ? kInf : -found.beta.log2();

  // The LP absolute tolerances say nothing once the optimum is tiny, so the LP
  // only counts when its value sits inside [beta(w), beta(w) + gap].
  if (lp_solved) {
    const double lo = found.beta.linear();
    const double v = diag.lp.objective_value;
    const double slack = 1e-8 * std::max(lo, v);
    diag.lp_certified = v >= lo - slack && v <= lo + found.gap + slack;
    if (diag.lp_certified) diag.lp_divergence = v > 0.0 ? -std::log2(v) : kInf;
  }

  std::vector<double> c(size);
  for (std::size_t j = 0; j < size; ++j) c[j] = std::exp2(found.w[j].log2() - binom_row[j]);
  diag.result = assemble(diag.witness_divergence, cp.k, n, cp.eps,
                         {WitnessKind::ErasureCoefficients, std::move(c)});
  return diag;
}

BoundResult erasure_bound(const ChannelParams& params) {
  const ChannelParams cp = checked(params);
  if (cp.kind != ChannelKind::Erasure) {
    throw std::invalid_argument("erasure_bound needs an erasure channel");
  }
  return erasure_bound_detailed(cp).result;
}

BoundResult tbr_limit_bound(const ChannelParams& params, const OptimizerOptions& options) {
  const ChannelParams cp = checked(params);
  const BernoulliTypeClassTester tester(cp.n, cp.p, cp.eps);
  if (cp.kind == ChannelKind::Depolarizing) {
    const Minimum best = grid_golden_minimize([&](double t) { return tester.divergence(t); }, 0.0,
                                              0.5, options.grid_size);
    return limit_result(best.value, cp.n, {WitnessKind::IsotropicWeight, {best.arg}});
  }
  // Erasure: per use s * iso(t = 1/2) + (1 - s) * erased. Only the entangled half of the
  // isotropic part overlaps the channel output, so the non-erased weight is s / 2.
  const Minimum best = grid_golden_minimize(
      [&](double s) {
        return tester.divergence(LogProb::from_linear(0.5 * s), LogProb::from_linear(1.0 - s));
      },
      0.0, 1.0, options.grid_size);
  return limit_result(best.value, cp.n, {WitnessKind::SeparableMixture, {best.arg}});
}

double emax_k_depolarizing(double p, std::int64_t k) {
  require_probability(p, "depolarizing parameter p");
  return unextendible_max_divergence_isotropic(1.0 - p, 2, k);
}

BoundResult adaptive_depolarizing_bound(const ChannelParams& params) {
  const ChannelParams cp = checked(params);
  if (cp.kind != ChannelKind::Depolarizing) {
    throw std::invalid_argument("adaptive_depolarizing_bound needs a depolarizing channel");
  }
  const double emax = emax_k_depolarizing(cp.p, cp.k);
  // log2((k-1)/k) - log2(2^(-n Emax)(1 - eps) - 1/k) is the generic rate at this total.
  const double total = static_cast<double>(cp.n) * emax - std::log1p(-cp.eps) / std::log(2.0);
  return assemble(total, cp.k, cp.n, cp.eps,
                  {WitnessKind::IsotropicWeight,
                   {std::min(1.0 - cp.p, extendibility_threshold(Family::Isotropic, 2, cp.k))}});
}

double pretty_strong_converse(double eps, std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
  const double kk = static_cast<double>(k);
  if (std::isnan(eps) || eps < 0.0 || eps >= 1.0 - 1.0 / kk) {
    throw std::invalid_argument("pretty strong converse needs eps in [0, 1 - 1/k)");
  }
  return -std::log1p(-kk * eps / (kk - 1.0)) / std::log(2.0) / static_cast<double>(n);
}

namespace {

std::int64_t min_k_one_shot(const OneShotRequirement& req) {
  const double bound = std::exp2(req.info) * req.eps + 1.0;
  const double k = std::floor(bound) + 1.0;
  if (!(k < 9.2e18)) throw std::overflow_error("required k exceeds 64-bit range");
  return std::max<std::int64_t>(2, static_cast<std::int64_t>(k));
}

std::int64_t min_k_adaptive(const AdaptiveRequirement& req) {
  const double nn = static_cast<double>(req.n);
  const double scale = std::exp2(req.info);
  const double a = scale / std::pow(1.0 - req.eps, 1.0 / nn);
  const double b = scale - 1.0;
  // g(k) > 0 is the admissibility condition; g decreases then increases in k.
  auto g = [&](double k) { return k - a * std::pow(k, 1.0 - 1.0 / nn) + b; };
  if (g(2.0) > 0.0) return 2;
  double lo = std::max(2.0, std::ceil(std::pow(a * (1.0 - 1.0 / nn), nn)));
  // Every integer in [2, lo) sits on the decreasing branch below g(2) <= 0.
  if (g(lo) > 0.0) return static_cast<std::int64_t>(lo);
  double hi = std::max(lo * 2.0, 4.0);
  while (!(g(hi) > 0.0)) {
    hi *= 2.0;
    if (hi > 9.2e18) throw std::overflow_error("required k exceeds 64-bit range");
  }
  // Invariant: g(lo) <= 0 < g(hi) with g increasing on [lo, hi].
  while (hi - lo > 1.0) {
    const double mid = std::floor((lo + hi) / 2.0);
    if (g(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<std::int64_t>(hi);
}

}  // namespace

std::int64_t min_k_required(const MinKMode& mode) {
  return std::visit(
      [](const auto& req) -> std::int64_t {
        if (std::isnan(req.info) || req.info < 0.0) {
          throw std::invalid_argument("information quantity must be nonnegative");
        }
        require_eps(req.eps);
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, OneShotRequirement>) {
          return min_k_one_shot(req);
        } else {
          if (req.n < 1) throw std::invalid_argument("blocklength n must be >= 1");
          return min_k_adaptive(req);
        }
      },
      mode);
}

double continuity_bound(double eps, int d, std::int64_t k) {
  require_probability(eps, "eps");
  if (d < 2) throw std::invalid_argument("dimension d must be >= 2");
  if (k < 2) throw std::invalid_argument("extendibility k must be >= 2");
  const double m = std::min(static_cast<double>(d), static_cast<double>(k));
  const double g = eps == 0.0 ? 0.0 : (eps + 1.0) * std::log2(eps + 1.0) - eps * std::log2(eps);
  return eps * std::log2(m) + g;
}

BoundResult evaluate_bound(const ChannelParams& params, BoundMethod method,
                           const OptimizerOptions& options) {
  if (method == BoundMethod::Adaptive) return adaptive_depolarizing_bound(params);
  return params.kind == ChannelKind::Depolarizing ? depolarizing_bound(params, options)
                                                  : erasure_bound(params);
}

BoundResult best_over_k(const ChannelParams& params, std::span<const std::int64_t> k_set,
                        BoundMethod method, const OptimizerOptions& options) {
  if (k_set.empty()) throw std::invalid_argument("k_set must not be empty");
  BoundResult best;
  bool have_valid = false;
  bool have_any = false;
  for (std::int64_t k : k_set) {
    ChannelParams p = params;
    p.k = k;
    BoundResult r = evaluate_bound(p, method, options);
    if (!have_any) {
      best = r;
      have_any = true;
    }
    if (!r.valid()) continue;
    if (!have_valid || r.log2M_total < best.log2M_total ||
        (r.log2M_total == best.log2M_total && r.k_used < best.k_used)) {
      best = std::move(r);
      have_valid = true;
    }
  }
  return best;
}

}  // namespace unext
