#pragma once

// Small dense linear programs: maximize c.x subject to relation-typed rows and
// per-variable bounds.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "unext/numerics.hpp"

namespace unext {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::LessEq;
  double rhs = 0.0;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;  // default 0
  std::vector<double> upper;  // default +inf

  /// Zero objective, bounds [0, +inf) on every variable.
  static LinearProgram with_vars(int num_vars);

  void add_constraint(std::vector<double> coefficients, Relation relation, double rhs);

  /// Throws std::invalid_argument on dimension mismatch, non-finite data, or lower > upper.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective_value = 0.0;
  std::vector<double> primal;
  double max_primal_residual = 0.0;
  double duality_gap_estimate = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-11;
  double feasibility_tolerance = 1e-9;
  /// Hard cap; the engine also stops after 64 (rows + columns) pivots.
  std::size_t max_pivots = 200000;
  /// An Optimal result must re-evaluate within these limits or solve_lp throws.
  double certify_residual = 1e-8;
  double certify_gap = 1e-7;
};

/// Raised when the pivot budget runs out or an optimal basis fails certification.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense two-phase simplex in extended precision with periodic reinversion from
/// the scaled data. Dantzig pricing, with Bland's rule during degenerate streaks.
/// Deterministic for fixed input. Throws std::invalid_argument on malformed input.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

struct ResidualReport {
  double max_constraint_violation = 0.0;
  double max_bound_violation = 0.0;
  double objective_delta = 0.0;

  bool passed(double tolerance = 1e-8) const {
    return max_constraint_violation <= tolerance && max_bound_violation <= tolerance &&
           objective_delta <= tolerance;
  }
};

/// Re-evaluates every row, bound and the objective directly from the primal vector.
ResidualReport check_solution(const LinearProgram& lp, const LpSolution& solution);

}  // namespace unext
