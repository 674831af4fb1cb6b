#include "unext/tools/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace unext::oracle {

long double exact_log2_binomial(unsigned n, unsigned l) {
  if (l > n) throw std::invalid_argument("l > n");
  if (n > 120) throw std::invalid_argument("exact binomial limited to n <= 120");
  unsigned __int128 c = 1;
  const unsigned m = std::min(l, n - l);
  for (unsigned i = 0; i < m; ++i) c = c * (n - i) / (i + 1);
  // Split into two 64-bit halves so the conversion keeps every bit.
  const auto hi = static_cast<std::uint64_t>(c >> 64);
  const auto lo = static_cast<std::uint64_t>(c);
  const long double value = std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
  return std::log2(value);
}

long double binary_kl(long double p, long double q) {
  auto term = [](long double x, long double y) -> long double {
    if (x == 0.0L) return 0.0L;
    if (y == 0.0L) return INFINITY;
    return x * std::log2(x / y);
  };
  return term(p, q) + term(1.0L - p, 1.0L - q);
}

long double binary_renyi(long double alpha, long double p, long double q) {
  long double sum = 0.0L;
  const long double xs[2] = {p, 1.0L - p};
  const long double ys[2] = {q, 1.0L - q};
  for (int i = 0; i < 2; ++i) {
    if (xs[i] == 0.0L) continue;
    if (ys[i] == 0.0L) {
      if (alpha > 1.0L) return INFINITY;
      continue;
    }
    sum += std::pow(xs[i], alpha) * std::pow(ys[i], 1.0L - alpha);
  }
  if (sum == 0.0L) return INFINITY;
  return std::log2(sum) / (alpha - 1.0L);
}

std::optional<double> binary_dmax_grid(double p, double q, double lambda_max, std::size_t points) {
  for (std::size_t i = 0; i < points; ++i) {
    const double lambda = lambda_max * static_cast<double>(i) / static_cast<double>(points - 1);
    const double scale = std::exp2(lambda);
    if (p <= scale * q && 1.0 - p <= scale * (1.0 - q)) return lambda;
  }
  return std::nullopt;
}

double isotropic_dmax_grid(double t, double threshold, std::size_t points) {
  auto objective = [t](double q) {
    const double a = q > 0.0 ? t / q : (t > 0.0 ? INFINITY : 0.0);
    const double b = q < 1.0 ? (1.0 - t) / (1.0 - q) : (t < 1.0 ? INFINITY : 0.0);
    return std::log2(std::max(a, b));
  };
  double best = std::min(objective(0.0), objective(threshold));
  for (std::size_t i = 1; i <= points; ++i) {
    best = std::min(best, objective(threshold * static_cast<double>(i) / static_cast<double>(points + 1)));
  }
  return best;
}

double dh_eps_via_lp(std::span<const double> rho, std::span<const double> sigma, double eps) {
  const int n = static_cast<int>(rho.size());
  LinearProgram lp = LinearProgram::with_vars(n);
  for (int i = 0; i < n; ++i) {
    lp.objective[i] = -sigma[i];
    lp.upper[i] = 1.0;
  }
  lp.add_constraint(std::vector<double>(rho.begin(), rho.end()), Relation::GreaterEq, 1.0 - eps);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::runtime_error("hypothesis-test LP not optimal");
  const double beta = -sol.objective_value;
  return beta > 0.0 ? -std::log2(beta) : INFINITY;
}

ExpandedProduct expand_bernoulli_product(int n, double p, double t) {
  if (n < 1 || n > 20) throw std::invalid_argument("expansion limited to 1 <= n <= 20");
  const std::size_t count = std::size_t{1} << n;
  ExpandedProduct out;
  out.rho.resize(count);
  out.sigma.resize(count);
  for (std::size_t s = 0; s < count; ++s) {
    double r = 1.0;
    double q = 1.0;
    for (int bit = 0; bit < n; ++bit) {
      const bool one = (s >> bit) & 1U;
      r *= one ? p : 1.0 - p;
      q *= one ? 1.0 - t : t;
    }
    out.rho[s] = r;
    out.sigma[s] = q;
  }
  return out;
}

namespace {

// Solves a square system with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

std::optional<VertexOptimum> vertex_enumeration(const LinearProgram& lp, double tol) {
  lp.validate();
  const auto n = static_cast<std::size_t>(lp.num_vars);
  struct Face {
    std::vector<double> a;
    double b;
  };
  // Equality rows are faces like any other; feasibility enforces them, which
  // also copes with redundant equalities.
  std::vector<Face> faces;
  for (const auto& c : lp.constraints) faces.push_back({c.coefficients, c.rhs});
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j])) {
      throw std::invalid_argument("vertex enumeration needs finite bounds");
    }
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    faces.push_back({e, lp.lower[j]});
    faces.push_back({e, lp.upper[j]});
  }
  const std::size_t pick = n;

  auto feasible = [&](const std::vector<double>& x) {
    for (const auto& c : lp.constraints) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += c.coefficients[j] * x[j];
      const double scale = 1.0 + std::abs(c.rhs);
      if (c.relation == Relation::LessEq && act > c.rhs + tol * scale) return false;
      if (c.relation == Relation::GreaterEq && act < c.rhs - tol * scale) return false;
      if (c.relation == Relation::Equal && std::abs(act - c.rhs) > tol * scale) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return false;
    }
    return true;
  };

  std::optional<VertexOptimum> best;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (chosen.size() == pick) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (std::size_t f : chosen) {
        a.push_back(faces[f].a);
        b.push_back(faces[f].b);
      }
      std::vector<double> x;
      if (!solve_square(a, b, x) || !feasible(x)) return;
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
      if (!best || obj > best->objective) best = VertexOptimum{obj, x};
      return;
    }
    for (std::size_t f = start; f < faces.size(); ++f) {
      chosen.push_back(f);
      recurse(f + 1);
      chosen.pop_back();
    }
  };
  recurse(0);
  return best;
}

}  // namespace unext::oracle
