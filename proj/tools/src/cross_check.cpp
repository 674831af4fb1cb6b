#include "unext/tools/cross_check.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "unext/hyptest.hpp"
#include "unext/statefam.hpp"
#include "unext/tools/oracles.hpp"
#include "unext/tools/sweep.hpp"

namespace unext::tools {

CheckDepth parse_check_depth(const std::string& text) {
  if (text == "quick") return CheckDepth::Quick;
  if (text == "full") return CheckDepth::Full;
  throw std::invalid_argument("unknown depth '" + text + "' (quick, full)");
}

bool CheckReport::passed() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return !o.passed; }));
}

namespace {

class Recorder {
 public:
  explicit Recorder(CheckReport& report) : report_(report) {}

  void near(std::string module, std::string property, std::string inputs, double observed,
            double expected, double tol) {
    const bool ok = (std::isinf(expected) && observed == expected) ||
                    std::abs(observed - expected) <= tol;
    report_.outcomes.push_back(
        {std::move(module), std::move(property), std::move(inputs), observed, expected, tol, ok});
  }

  void truth(std::string module, std::string property, std::string inputs, bool ok) {
    report_.outcomes.push_back({std::move(module), std::move(property), std::move(inputs),
                                ok ? 1.0 : 0.0, 1.0, 0.0, ok});
  }

  // Records the worst case of a randomized family as a single outcome.
  void worst(std::string module, std::string property, std::string inputs, double worst_dev,
             double tol) {
    report_.outcomes.push_back({std::move(module), std::move(property), std::move(inputs), worst_dev,
                                0.0, tol, worst_dev <= tol});
  }

 private:
  CheckReport& report_;
};

FiniteDist dist(std::vector<double> w) { return FiniteDist::from_linear(w); }

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double zero_prob) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) {
    x = u(rng) < zero_prob ? 0.0 : -std::log(1.0 - u(rng));
    s += x;
  }
  if (s == 0.0) {
    w[0] = 1.0;
    s = 1.0;
  }
  for (auto& x : w) x /= s;
  // Absorb rounding into the largest weight so zeros stay exact.
  const auto big = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != big) t += w[i];
  }
  w[big] = 1.0 - t;
  return w;
}

void run_quick(Recorder& rec, const CheckHooks& hooks) {
  // numerics
  rec.near("numerics", "binary KL", "p=0.85 q=0.75", binary_divergence(Divergence::kl(), 0.85, 0.75),
           static_cast<double>(oracle::binary_kl(0.85L, 0.75L)), 1e-12);
  rec.near("numerics", "binary Renyi(2)", "p=0.85 q=0.75",
           binary_divergence(Divergence::renyi(2.0), 0.85, 0.75),
           static_cast<double>(oracle::binary_renyi(2.0L, 0.85L, 0.75L)), 1e-12);
  {
    const auto grid = oracle::binary_dmax_grid(0.85, 0.75, 1.0, 1000001);
    rec.near("numerics", "binary Dmax vs lambda grid", "p=0.85 q=0.75",
             binary_divergence(Divergence::max(), 0.85, 0.75), grid.value_or(kInf), 2e-6);
  }
  rec.near("numerics", "log_binomial vs exact integer", "n=50 l=25", log_binomial(50, 25),
           static_cast<double>(oracle::exact_log2_binomial(50, 25)), 1e-12 * 46.9);

  // statefam
  rec.near("statefam", "Werner threshold", "d=3 k=3", extendibility_threshold(Family::Werner, 3, 3),
           5.0 / 6.0, 1e-15);
  rec.near("statefam", "isotropic unextendible KL", "d=2 t=0.85 k=2",
           unextendible_divergence(StateFamilyPoint::make(Family::Isotropic, 2, 0.85), Divergence::kl(), 2),
           static_cast<double>(oracle::binary_kl(0.85L, 0.75L)), 1e-12);
  rec.near("statefam", "Werner unextendible KL", "d=2 p=0.9 k=2",
           unextendible_divergence(StateFamilyPoint::make(Family::Werner, 2, 0.9), Divergence::kl(), 2),
           static_cast<double>(oracle::binary_kl(0.9L, 0.75L)), 1e-12);
  rec.near("statefam", "isotropic Dmax vs q grid", "t=0.9 d=2 k=2",
           unextendible_max_divergence_isotropic(0.9, 2, 2), oracle::isotropic_dmax_grid(0.9, 0.75), 1e-9);

  // hyptest
  rec.near("hyptest", "Neyman-Pearson vs LP", "rho=(0.8,0.2) sigma=(0.5,0.5) eps=0.1",
           dh_eps_general(HypothesisInstance::make(dist({0.8, 0.2}), dist({0.5, 0.5}), 0.1)),
           oracle::dh_eps_via_lp(std::vector<double>{0.8, 0.2}, std::vector<double>{0.5, 0.5}, 0.1), 1e-9);
  {
    const auto ex = oracle::expand_bernoulli_product(2, 0.2, 0.5);
    rec.near("hyptest", "type classes vs expanded strings", "n=2 p=0.2 t=0.5 eps=0.1",
             dh_eps_bernoulli_product(BernoulliProductInstance::make(2, 0.2, 0.5, 0.1)),
             oracle::dh_eps_via_lp(ex.rho, ex.sigma, 0.1), 1e-9);
  }

  // lp
  {
    const auto built = erasure_lp_build(ChannelParams::make(ChannelKind::Erasure, 0.0, 1, 0.0, 2));
    const LpSolution sol = solve_lp(built.program);
    rec.near("lp", "erasure LP optimum", "n=1 k=2 p=0 eps=0", sol.objective_value, 0.5, 1e-9);
    // Box the free multipliers far outside the optimum so vertices exist.
    LinearProgram boxed = built.program;
    for (auto& u : boxed.upper) u = std::min(u, 16.0);
    const auto vertex = oracle::vertex_enumeration(boxed);
    rec.near("lp", "simplex vs vertex enumeration", "erasure n=1 k=2 p=0 eps=0", sol.objective_value,
             vertex ? vertex->objective : kInf, 1e-9);
  }

  // bounds
  {
    const Matrix m = hooks.erasure_matrix(2, 2);
    const double expected[3][3] = {{0.25, 0.0, 0.0}, {0.25, 0.5, 0.0}, {0.25, 1.0, 1.0}};
    double worst = 0.0;
    bool shape_ok = m.size() == 3;
    for (std::size_t u = 0; shape_ok && u < 3; ++u) {
      shape_ok = m[u].size() == 3;
      for (std::size_t v = 0; shape_ok && v < 3; ++v) worst = std::max(worst, std::abs(m[u][v] - expected[u][v]));
    }
    rec.worst("bounds", "erasure transfer matrix anchor", "n=2 k=2",
              shape_ok ? worst : kInf, 0.0);
  }
  rec.near("bounds", "rate_from_divergence noiseless qubit", "E=log2(4/3) k=2",
           rate_from_divergence(std::log2(4.0 / 3.0), 2).log2M_total, 1.0, 1e-12);
  rec.near("bounds", "depolarizing noiseless", "p=0 n=1 eps=0 k=2",
           depolarizing_bound(ChannelParams::make(ChannelKind::Depolarizing, 0.0, 1, 0.0, 2)).log2M_total,
           1.0, 1e-12);
  rec.near("bounds", "depolarizing antidegradable", "p=0.25 n=3 eps=0.05 k=2",
           depolarizing_bound(ChannelParams::make(ChannelKind::Depolarizing, 0.25, 3, 0.05, 2)).log2M_total,
           pretty_strong_converse(0.05, 1, 2), 1e-9);
  rec.near("bounds", "erasure at p = 1 - 1/k", "p=0.5 n=1 eps=0.05 k=2",
           erasure_bound(ChannelParams::make(ChannelKind::Erasure, 0.5, 1, 0.05, 2)).log2M_total,
           pretty_strong_converse(0.05, 1, 2), 1e-9);
  rec.near("bounds", "adaptive noiseless", "p=0 n=1 eps=0 k=2",
           adaptive_depolarizing_bound(ChannelParams::make(ChannelKind::Depolarizing, 0.0, 1, 0.0, 2)).log2M_total,
           1.0, 1e-12);
  rec.truth("bounds", "adaptive invalid past validity", "p=0 n=3 eps=0.05 k=2",
            !adaptive_depolarizing_bound(ChannelParams::make(ChannelKind::Depolarizing, 0.0, 3, 0.05, 2)).valid());
  rec.near("bounds", "pretty strong converse", "eps=0.05 n=2 k=4", pretty_strong_converse(0.05, 2, 4),
           -std::log2(1.0 - 4.0 / 3.0 * 0.05) / 2.0, 1e-15);
  rec.near("bounds", "continuity bound", "eps=0.5 d=2 k=4", continuity_bound(0.5, 2, 4),
           0.5 + 1.5 * std::log2(1.5) + 0.5, 1e-12);
  rec.near("bounds", "min k (adaptive, n=1 closed form)", "I=1 eps=0.05 n=1",
           static_cast<double>(min_k_required(AdaptiveRequirement{1.0, 0.05, 1})),
           std::floor(2.0 * 0.05 / 0.95 + 1.0) + 1.0, 0.0);
}

void run_full(Recorder& rec, CheckReport& report) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // NP greedy against the LP route.
  double np_lp = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
    const auto r = random_simplex(rng, n, 0.15);
    const auto s = random_simplex(rng, n, 0.15);
    const double eps = 0.95 * u(rng);
    const double a = dh_eps_general(HypothesisInstance::make(dist(r), dist(s), eps));
    const double b = oracle::dh_eps_via_lp(r, s, eps);
    const double dev = (std::isinf(a) && std::isinf(b)) ? 0.0 : std::abs(a - b);
    np_lp = std::max(np_lp, std::isnan(dev) ? kInf : dev);
  }
  report.max_np_lp_deviation = np_lp;
  rec.worst("hyptest", "Neyman-Pearson vs LP (500 random instances)", "<= 8 outcomes", np_lp, 1e-8);

  // Type classes against the full 2^n expansion.
  double tc = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const double p = u(rng);
    const double t = u(rng);
    const double eps = 0.95 * u(rng);
    const auto ex = oracle::expand_bernoulli_product(n, p, t);
    std::vector<LogProb> lr, ls;
    for (std::size_t i = 0; i < ex.rho.size(); ++i) {
      lr.push_back(LogProb::from_linear(ex.rho[i]));
      ls.push_back(LogProb::from_linear(ex.sigma[i]));
    }
    const LogProb beta = min_type2_error(lr, ls, eps);
    const double expanded = beta.is_zero() ? kInf : -beta.log2();
    const double fast = dh_eps_bernoulli_product(BernoulliProductInstance::make(n, p, t, eps));
    const double dev = (std::isinf(fast) && std::isinf(expanded)) ? 0.0 : std::abs(fast - expanded);
    tc = std::max(tc, std::isnan(dev) ? kInf : dev);
  }
  rec.worst("hyptest", "type classes vs expansion (200 random, n <= 12)", "random p,t,eps", tc, 1e-10);

  // Closed-form isotropic Dmax against the q grid.
  // Above the threshold the minimizer is the grid endpoint; below it the value is exactly zero.
  double grid_dev = 0.0;
  bool zero_below = true;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const std::int64_t k = 2 + static_cast<std::int64_t>(rng() % 9);
    const double thr = extendibility_threshold(Family::Isotropic, d, k);
    const double above = thr + (1.0 - thr) * u(rng);
    const double below = thr * u(rng);
    grid_dev = std::max(grid_dev, std::abs(unextendible_max_divergence_isotropic(above, d, k) -
                                           oracle::isotropic_dmax_grid(above, thr)));
    if (unextendible_max_divergence_isotropic(below, d, k) != 0.0) zero_below = false;
  }
  rec.worst("statefam", "isotropic Dmax vs q grid (40 random)", "random t>threshold,d,k", grid_dev, 1e-9);
  rec.truth("statefam", "isotropic Dmax zero at or below threshold", "40 random t,d,k", zero_below);

  // Simplex against vertex enumeration on small integer LPs.
  double lp_dev = 0.0;
  int compared = 0;
  for (int trial = 0; trial < 300 && compared < 200; ++trial) {
    const int nv = 1 + static_cast<int>(rng() % 4);
    const int nc = static_cast<int>(rng() % static_cast<unsigned>(9 - nv));
    LinearProgram lp = LinearProgram::with_vars(nv);
    auto ri = [&](int lo, int hi) { return static_cast<double>(lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1))); };
    for (int j = 0; j < nv; ++j) {
      lp.objective[j] = ri(-5, 5);
      lp.lower[j] = ri(-3, 0);
      lp.upper[j] = lp.lower[j] + ri(1, 6);
    }
    for (int c = 0; c < nc; ++c) {
      std::vector<double> a(static_cast<std::size_t>(nv));
      for (auto& x : a) x = ri(-4, 4);
      const auto rel = static_cast<Relation>(rng() % 3);
      lp.add_constraint(std::move(a), rel, ri(-6, 6));
    }
    const auto vertex = oracle::vertex_enumeration(lp);
    const LpSolution sol = solve_lp(lp);
    if (!vertex) {
      if (sol.status != LpStatus::Infeasible) lp_dev = kInf;
      continue;
    }
    ++compared;
    if (sol.status != LpStatus::Optimal) {
      lp_dev = kInf;
      continue;
    }
    lp_dev = std::max(lp_dev, std::abs(sol.objective_value - vertex->objective));
  }
  rec.worst("lp", "simplex vs vertex enumeration (random integer LPs)", "<= 8 vars+rows", lp_dev, 1e-9);

  // Monotone-in-q and Renyi-order properties on a random grid.
  bool monotone = true;
  bool order = true;
  for (int trial = 0; trial < 2000; ++trial) {
    double v[3] = {u(rng), u(rng), u(rng)};
    std::sort(v, v + 3);
    const double r = v[0], q = v[1], p = v[2];
    if (!(0.0 < r && r < q && q < p && p < 1.0)) continue;
    const double a1 = 0.05 + 3.0 * u(rng);
    const Divergence kinds[2] = {Divergence::kl(), Divergence::renyi(a1 == 1.0 ? 1.5 : a1)};
    for (const auto& kind : kinds) {
      if (!(binary_divergence(kind, p, r) > binary_divergence(kind, p, q))) monotone = false;
    }
    const double lo = 0.05 + 2.0 * u(rng);
    const double hi = lo + 0.5 + u(rng);
    if (lo != 1.0 && hi != 1.0 &&
        binary_divergence(Divergence::renyi(lo), p, q) > binary_divergence(Divergence::renyi(hi), p, q) + 1e-12) {
      order = false;
    }
  }
  rec.truth("numerics", "divergence monotone in second argument", "2000 random triples", monotone);
  rec.truth("numerics", "Renyi nondecreasing in order", "2000 random pairs", order);
}

}  // namespace

CheckReport cross_check(CheckDepth depth, const CheckHooks& hooks) {
  CheckReport report;
  Recorder rec(report);
  run_quick(rec, hooks);
  if (depth == CheckDepth::Full) run_full(rec, report);
  return report;
}

void print_report(const CheckReport& report, std::ostream& out) {
  for (const auto& o : report.outcomes) {
    out << (o.passed ? "PASS " : "FAIL ") << o.module << ": " << o.property << " [" << o.inputs
        << "] observed=" << format_number(o.observed)
        << " expected=" << format_number(o.expected) << " tol=" << o.tolerance << '\n';
  }
  if (report.max_np_lp_deviation >= 0.0) {
    out << "NP-vs-LP max deviation: " << report.max_np_lp_deviation << '\n';
  }
  out << (report.passed() ? "all " : "") << report.outcomes.size() - report.failures() << " of "
      << report.outcomes.size() << " checks passed\n";
}

}  // namespace unext::tools
