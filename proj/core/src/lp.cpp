#include "unext/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace unext {

LinearProgram LinearProgram::with_vars(int num_vars) {
  if (num_vars < 1) throw std::invalid_argument("LinearProgram needs at least one variable");
  LinearProgram lp;
  lp.num_vars = num_vars;
  lp.objective.assign(num_vars, 0.0);
  lp.lower.assign(num_vars, 0.0);
  lp.upper.assign(num_vars, kInf);
  return lp;
}

void LinearProgram::add_constraint(std::vector<double> coefficients, Relation relation,
                                   double rhs) {
  constraints.push_back({std::move(coefficients), relation, rhs});
}

void LinearProgram::validate() const {
  const auto n = static_cast<std::size_t>(num_vars);
  if (num_vars < 1) throw std::invalid_argument("LinearProgram needs at least one variable");
  if (objective.size() != n || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("objective/bounds length does not match num_vars");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("objective coefficients must be finite");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw std::invalid_argument("invalid bounds on variable " + std::to_string(j));
    }
  }
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    const auto& row = constraints[r];
    if (row.coefficients.size() != n) {
      throw std::invalid_argument("constraint " + std::to_string(r) + " has wrong length");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("constraint rhs must be finite");
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) throw std::invalid_argument("constraint coefficients must be finite");
    }
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

double pow2_inverse(double magnitude) {
  if (magnitude == 0.0) return 1.0;
  return std::ldexp(1.0, -std::ilogb(magnitude));
}

// Original variable x = offset + sum(sign * standard column).
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> parts;
};

struct StandardForm {
  std::vector<VariableMap> vars;
  std::size_t num_cols = 0;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> cost;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const auto n = static_cast<std::size_t>(lp.num_vars);
  sf.vars.resize(n);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t j = 0; j < n; ++j) {
    auto& v = sf.vars[j];
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.parts.emplace_back(sf.num_cols, 1.0);
      if (std::isfinite(hi)) upper_rows.emplace_back(sf.num_cols, hi - lo);
      ++sf.num_cols;
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.parts.emplace_back(sf.num_cols++, -1.0);
    } else {
      v.parts.emplace_back(sf.num_cols++, 1.0);
      v.parts.emplace_back(sf.num_cols++, -1.0);
    }
  }

  sf.cost.assign(sf.num_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (auto [col, sign] : sf.vars[j].parts) sf.cost[col] += sign * lp.objective[j];
  }

  for (const auto& c : lp.constraints) {
    std::vector<double> row(sf.num_cols, 0.0);
    double b = c.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.coefficients[j];
      if (a == 0.0) continue;
      b -= a * sf.vars[j].offset;
      for (auto [col, sign] : sf.vars[j].parts) row[col] += sign * a;
    }
    sf.rows.push_back(std::move(row));
    sf.relations.push_back(c.relation);
    sf.rhs.push_back(b);
  }
  for (auto [col, bound] : upper_rows) {
    std::vector<double> row(sf.num_cols, 0.0);
    row[col] = 1.0;
    sf.rows.push_back(std::move(row));
    sf.relations.push_back(Relation::LessEq);
    sf.rhs.push_back(bound);
  }
  return sf;
}

bool trivially_satisfied(Relation rel, double rhs, double tol) {
  switch (rel) {
    case Relation::LessEq:
      return 0.0 <= rhs + tol;
    case Relation::GreaterEq:
      return 0.0 >= rhs - tol;
    case Relation::Equal:
      return std::abs(rhs) <= tol;
  }
  return false;
}

using Real = long double;

// Scaled standard form [A | b] with slack and artificial columns appended. The
// working tableau is periodically rebuilt from this data so that rounding
// does not accumulate across long pivot sequences.
struct System {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Real> a;  // rows x cols
  std::vector<Real> b;

  Real at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

enum class PhaseResult { Optimal, Unbounded };

class SimplexEngine {
 public:
  SimplexEngine(const System& sys, std::vector<std::size_t>& basis, std::vector<bool>& banned,
                const SimplexOptions& opts, std::size_t& pivots)
      : sys_(sys),
        width_(sys.cols + 1),
        t_(sys.rows * width_),
        basis_(basis),
        banned_(banned),
        opts_(opts),
        pivots_(pivots),
        budget_(std::min(opts.max_pivots, 64 * (sys.rows + sys.cols))) {
    reinvert();
  }

  std::size_t rows() const { return sys_.rows; }
  std::size_t cols() const { return sys_.cols; }
  Real at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }
  Real rhs(std::size_t r) const { return t_[r * width_ + sys_.cols]; }
  /// reduced[j] = c_B B^-1 A_j - c_j; reduced[cols] is the objective value.
  const std::vector<Real>& reduced() const { return d_; }

  // Rebuilds B^-1 [A | b] by Gauss-Jordan elimination with partial pivoting.
  // Keeps the current tableau if the basis looks singular.
  bool reinvert() {
    const std::size_t m = sys_.rows;
    const std::size_t w = m + width_;
    std::vector<Real> aug(m * w, 0.0L);
    for (std::size_t r = 0; r < m; ++r) {
      Real* row = &aug[r * w];
      for (std::size_t i = 0; i < m; ++i) row[i] = sys_.at(r, basis_[i]);
      for (std::size_t c = 0; c < sys_.cols; ++c) row[m + c] = sys_.at(r, c);
      row[m + sys_.cols] = sys_.b[r];
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r) {
        if (std::abs(aug[r * w + col]) > std::abs(aug[piv * w + col])) piv = r;
      }
      if (std::abs(aug[piv * w + col]) < 1e-14L) return false;
      if (piv != col) {
        std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(piv * w),
                         aug.begin() + static_cast<std::ptrdiff_t>((piv + 1) * w),
                         aug.begin() + static_cast<std::ptrdiff_t>(col * w));
      }
      Real* prow = &aug[col * w];
      const Real inv = 1.0L / prow[col];
      for (std::size_t c = col; c < w; ++c) prow[c] *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        Real* row = &aug[r * w];
        const Real f = row[col];
        if (f == 0.0L) continue;
        for (std::size_t c = col; c < w; ++c) row[c] -= f * prow[c];
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      std::copy_n(&aug[r * w + m], width_, &t_[r * width_]);
      t_[r * width_ + basis_[r]] = 1.0L;
    }
    since_reinvert_ = 0;
    return true;
  }

  void set_cost(std::vector<Real> cost) {
    cost_ = std::move(cost);
    price();
    best_ = d_[sys_.cols];
  }

  void price() {
    d_.assign(width_, 0.0L);
    for (std::size_t c = 0; c < sys_.cols; ++c) d_[c] = -cost_[c];
    for (std::size_t r = 0; r < sys_.rows; ++r) {
      const Real cb = cost_[basis_[r]];
      if (cb == 0.0L) continue;
      const Real* row = &t_[r * width_];
      for (std::size_t c = 0; c < width_; ++c) d_[c] += cb * row[c];
    }
  }

  /// Stops early once the objective reaches stop_at.
  PhaseResult maximize(Real stop_at = std::numeric_limits<Real>::infinity()) {
    bool confirmed = false;
    while (true) {
      if (d_[sys_.cols] >= stop_at) return PhaseResult::Optimal;
      const std::size_t enter = choose_entering();
      if (enter == sys_.cols) {
        // Accept optimality only on a freshly rebuilt tableau.
        if (confirmed || !refresh()) return PhaseResult::Optimal;
        confirmed = true;
        continue;
      }
      const std::size_t leave = choose_leaving(enter);
      if (leave == sys_.rows) {
        if (confirmed || !refresh()) return PhaseResult::Unbounded;
        confirmed = true;
        continue;
      }
      if (confirmed && ++overturned_ > kMaxOverturned) {
        throw NumericalFailure("simplex termination test is unstable under reinversion");
      }
      confirmed = false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    if (++pivots_ > budget_) throw NumericalFailure("simplex pivot budget exhausted");
    const Real step = std::max(0.0L, rhs(pr)) / at(pr, pc);
    degenerate_streak_ = step <= 1e-15L ? degenerate_streak_ + 1 : 0;

    Real* prow = &t_[pr * width_];
    const Real inv = 1.0L / prow[pc];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0L;
    for (std::size_t r = 0; r < sys_.rows; ++r) {
      if (r == pr) continue;
      Real* row = &t_[r * width_];
      const Real f = row[pc];
      if (f == 0.0L) continue;
      for (std::size_t c = 0; c < width_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0L;
    }
    const Real f = d_[pc];
    if (f != 0.0L) {
      for (std::size_t c = 0; c < width_; ++c) d_[c] -= f * prow[c];
      d_[pc] = 0.0L;
    }
    basis_[pr] = pc;
    if (++since_reinvert_ >= kReinvertInterval) refresh();
    // The objective never decreases in exact arithmetic, so a clear drop means
    // the basis has become too ill-conditioned to trust.
    const Real obj = d_[sys_.cols];
    if (obj < best_ - 1e-7L * (1.0L + std::abs(best_))) {
      throw NumericalFailure("simplex objective regressed; basis is ill-conditioned");
    }
    best_ = std::max(best_, obj);
  }

 private:
  static constexpr std::size_t kReinvertInterval = 32;
  static constexpr std::size_t kBlandAfter = 16;
  static constexpr std::size_t kMaxOverturned = 16;

  bool refresh() {
    if (!reinvert()) {
      // Retry after another interval rather than on every pivot.
      since_reinvert_ = 0;
      return false;
    }
    price();
    return true;
  }

  bool bland_mode() const { return degenerate_streak_ >= kBlandAfter; }

  // Dantzig pricing; Bland's smallest-index rule during degenerate streaks. A
  // cycle consists only of degenerate pivots, so it would run under Bland's
  // rule, which cannot cycle.
  std::size_t choose_entering() const {
    const Real tol = opts_.pivot_tolerance;
    std::size_t enter = sys_.cols;
    Real most = -tol;
    for (std::size_t c = 0; c < sys_.cols; ++c) {
      if (banned_[c] || !(d_[c] < -tol)) continue;
      if (bland_mode()) return c;
      if (d_[c] < most) {
        most = d_[c];
        enter = c;
      }
    }
    return enter;
  }

  std::size_t choose_leaving(std::size_t enter) const {
    const Real tol = opts_.pivot_tolerance;
    std::size_t leave = sys_.rows;
    Real best = 0.0L;
    for (std::size_t r = 0; r < sys_.rows; ++r) {
      const Real a = at(r, enter);
      if (a <= tol) continue;
      const Real ratio = std::max(0.0L, rhs(r)) / a;
      if (leave == sys_.rows) {
        leave = r;
        best = ratio;
        continue;
      }
      const bool tie = std::abs(ratio - best) <= 1e-12L * std::max(1.0L, best);
      if (tie) {
        // Bland: smallest basic index. Otherwise the larger pivot element.
        const bool take = bland_mode() ? basis_[r] < basis_[leave] : a > at(leave, enter);
        if (take) {
          leave = r;
          best = std::min(best, ratio);
        }
      } else if (ratio < best) {
        leave = r;
        best = ratio;
      }
    }
    return leave;
  }

  const System& sys_;
  std::size_t width_;
  std::vector<Real> t_;
  std::vector<Real> d_;
  std::vector<Real> cost_;
  std::vector<std::size_t>& basis_;
  std::vector<bool>& banned_;
  const SimplexOptions& opts_;
  std::size_t& pivots_;
  std::size_t budget_;
  std::size_t since_reinvert_ = 0;
  std::size_t degenerate_streak_ = 0;
  Real best_ = 0.0L;
  std::size_t overturned_ = 0;
};

double row_activity(const std::vector<double>& a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
  return s;
}

double violation(Relation rel, double activity, double rhs) {
  switch (rel) {
    case Relation::LessEq:
      return std::max(0.0, activity - rhs);
    case Relation::GreaterEq:
      return std::max(0.0, rhs - activity);
    case Relation::Equal:
      return std::abs(activity - rhs);
  }
  return kInf;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  StandardForm sf = to_standard_form(lp);

  LpSolution sol;

  // Drop empty rows after checking them.
  {
    std::size_t keep = 0;
    for (std::size_t r = 0; r < sf.rows.size(); ++r) {
      const bool empty = std::all_of(sf.rows[r].begin(), sf.rows[r].end(),
                                     [](double a) { return a == 0.0; });
      if (empty) {
        if (!trivially_satisfied(sf.relations[r], sf.rhs[r], options.feasibility_tolerance)) {
          sol.status = LpStatus::Infeasible;
          return sol;
        }
        continue;
      }
      if (keep != r) {
        sf.rows[keep] = std::move(sf.rows[r]);
        sf.relations[keep] = sf.relations[r];
        sf.rhs[keep] = sf.rhs[r];
      }
      ++keep;
    }
    sf.rows.resize(keep);
    sf.relations.resize(keep);
    sf.rhs.resize(keep);
  }

  const std::size_t m = sf.rows.size();
  const std::size_t ns = sf.num_cols;

  // Power-of-two geometric-mean equilibration of rows and columns.
  std::vector<double> col_scale(ns, 1.0);
  std::vector<double> row_scale(m, 1.0);
  for (int pass = 0; pass < 4; ++pass) {
    for (std::size_t r = 0; r < m; ++r) {
      double lo = kInf, hi = 0.0;
      for (std::size_t c = 0; c < ns; ++c) {
        const double v = std::abs(sf.rows[r][c] * col_scale[c]);
        if (v == 0.0) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi > 0.0) row_scale[r] = pow2_inverse(std::sqrt(lo) * std::sqrt(hi));
    }
    for (std::size_t c = 0; c < ns; ++c) {
      double lo = kInf, hi = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        const double v = std::abs(sf.rows[r][c] * row_scale[r]);
        if (v == 0.0) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi > 0.0) col_scale[c] = pow2_inverse(std::sqrt(lo) * std::sqrt(hi));
    }
  }
  std::vector<double> row_sign(m, 1.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (sf.rhs[r] < 0.0) row_sign[r] = -1.0;
  }

  // Column layout: structural | one slack/surplus per inequality | one artificial per >=/= row.
  std::vector<Relation> rel(m);
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  std::size_t cols = ns;
  for (std::size_t r = 0; r < m; ++r) {
    rel[r] = sf.relations[r];
    if (row_sign[r] < 0.0) {
      if (rel[r] == Relation::LessEq) {
        rel[r] = Relation::GreaterEq;
      } else if (rel[r] == Relation::GreaterEq) {
        rel[r] = Relation::LessEq;
      }
    }
    if (rel[r] != Relation::Equal) slack_col[r] = cols++;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (rel[r] != Relation::LessEq) art_col[r] = cols++;
  }

  System sys;
  sys.rows = m;
  sys.cols = cols;
  sys.a.assign(m * cols, 0.0L);
  sys.b.assign(m, 0.0L);
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> identity_col(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double f = row_sign[r] * row_scale[r];
    Real* row = &sys.a[r * cols];
    for (std::size_t c = 0; c < ns; ++c) row[c] = static_cast<Real>(f * sf.rows[r][c] * col_scale[c]);
    sys.b[r] = static_cast<Real>(f) * static_cast<Real>(sf.rhs[r]);
    if (rel[r] == Relation::LessEq) {
      row[slack_col[r]] = 1.0L;
      identity_col[r] = slack_col[r];
    } else {
      if (rel[r] == Relation::GreaterEq) row[slack_col[r]] = -1.0L;
      row[art_col[r]] = 1.0L;
      identity_col[r] = art_col[r];
    }
    basis[r] = identity_col[r];
  }

  std::vector<bool> banned(cols, false);
  std::vector<bool> is_artificial(cols, false);
  for (std::size_t r = 0; r < m; ++r) {
    if (art_col[r] != SIZE_MAX) is_artificial[art_col[r]] = true;
  }

  SimplexEngine engine(sys, basis, banned, options, sol.pivots);

  // Phase 1: maximize -sum(artificials).
  const bool has_artificials = std::any_of(is_artificial.begin(), is_artificial.end(),
                                           [](bool b) { return b; });
  if (has_artificials) {
    std::vector<Real> phase1_cost(cols, 0.0L);
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_artificial[c]) phase1_cost[c] = -1.0L;
    }
    engine.set_cost(phase1_cost);
    engine.maximize(-1e-13L);
    if (-engine.reduced()[cols] > options.feasibility_tolerance) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis on their largest entry.
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_artificial[basis[r]]) continue;
      std::size_t best = cols;
      for (std::size_t c = 0; c < cols; ++c) {
        if (is_artificial[c] || std::abs(engine.at(r, c)) <= options.pivot_tolerance) continue;
        if (best == cols || std::abs(engine.at(r, c)) > std::abs(engine.at(r, best))) best = c;
      }
      if (best != cols) engine.pivot(r, best);
    }
    for (std::size_t c = 0; c < cols; ++c) banned[c] = is_artificial[c];
  }

  // Phase 2.
  std::vector<Real> cost(cols, 0.0L);
  for (std::size_t c = 0; c < ns; ++c) cost[c] = static_cast<Real>(sf.cost[c] * col_scale[c]);
  engine.set_cost(cost);
  if (engine.maximize() == PhaseResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  std::vector<double> x_std(ns, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < ns) {
      x_std[basis[r]] = static_cast<double>(std::max(0.0L, engine.rhs(r))) * col_scale[basis[r]];
    }
  }
  const auto n = static_cast<std::size_t>(lp.num_vars);
  sol.primal.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = sf.vars[j].offset;
    for (auto [col, sign] : sf.vars[j].parts) v += sign * x_std[col];
    sol.primal[j] = v;
  }

  sol.status = LpStatus::Optimal;
  sol.objective_value = row_activity(lp.objective, sol.primal);

  // Dual values read off the identity columns, mapped back to unscaled rows.
  double dual_objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) dual_objective += lp.objective[j] * sf.vars[j].offset;
  for (std::size_t r = 0; r < m; ++r) {
    const double y = static_cast<double>(engine.reduced()[identity_col[r]]) * row_sign[r] * row_scale[r];
    dual_objective += y * sf.rhs[r];
  }
  sol.duality_gap_estimate = std::abs(sol.objective_value - dual_objective);

  const ResidualReport report = check_solution(lp, sol);
  sol.max_primal_residual = std::max(report.max_constraint_violation, report.max_bound_violation);
  if (sol.max_primal_residual > options.certify_residual || sol.duality_gap_estimate > options.certify_gap) {
    throw NumericalFailure("simplex result failed certification: residual " +
                           std::to_string(sol.max_primal_residual) + ", duality gap " +
                           std::to_string(sol.duality_gap_estimate));
  }
  return sol;
}

ResidualReport check_solution(const LinearProgram& lp, const LpSolution& solution) {
  lp.validate();
  const auto n = static_cast<std::size_t>(lp.num_vars);
  if (solution.primal.size() != n) {
    throw std::invalid_argument("primal vector length does not match num_vars");
  }
  ResidualReport report;
  for (const auto& c : lp.constraints) {
    const double act = row_activity(c.coefficients, solution.primal);
    report.max_constraint_violation =
        std::max(report.max_constraint_violation, violation(c.relation, act, c.rhs));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double x = solution.primal[j];
    report.max_bound_violation = std::max(
        {report.max_bound_violation, std::max(0.0, lp.lower[j] - x), std::max(0.0, x - lp.upper[j])});
  }
  report.objective_delta =
      std::abs(row_activity(lp.objective, solution.primal) - solution.objective_value);
  return report;
}

}  // namespace unext
