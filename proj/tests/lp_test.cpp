#include <gtest/gtest.h>

#include <cmath>

#include "unext/lp.hpp"

namespace {

using unext::LinearProgram;
using unext::LpStatus;
using unext::Relation;
using unext::solve_lp;

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
  auto lp = LinearProgram::with_vars(2);
  lp.objective = {3.0, 5.0};
  lp.add_constraint({1.0, 0.0}, Relation::LessEq, 4.0);
  lp.add_constraint({0.0, 2.0}, Relation::LessEq, 12.0);
  lp.add_constraint({3.0, 2.0}, Relation::LessEq, 18.0);
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 36.0, 1e-12);
  EXPECT_NEAR(sol.primal[0], 2.0, 1e-12);
  EXPECT_NEAR(sol.primal[1], 6.0, 1e-12);
  EXPECT_LE(sol.duality_gap_estimate, 1e-9);
  EXPECT_TRUE(unext::check_solution(lp, sol).passed());
}

TEST(Simplex, EqualityAndGreaterRows) {
  // min x + y (as max -x - y) s.t. x + y >= 2, x - y = 1.
  auto lp = LinearProgram::with_vars(2);
  lp.objective = {-1.0, -1.0};
  lp.add_constraint({1.0, 1.0}, Relation::GreaterEq, 2.0);
  lp.add_constraint({1.0, -1.0}, Relation::Equal, 1.0);
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, -2.0, 1e-12);
  EXPECT_NEAR(sol.primal[0], 1.5, 1e-12);
}

TEST(Simplex, DetectsInfeasible) {
  auto lp = LinearProgram::with_vars(1);
  lp.add_constraint({1.0}, Relation::GreaterEq, 3.0);
  lp.add_constraint({1.0}, Relation::LessEq, 2.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(Simplex, DetectsUnbounded) {
  auto lp = LinearProgram::with_vars(2);
  lp.objective = {1.0, 0.0};
  lp.add_constraint({1.0, -1.0}, Relation::LessEq, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(Simplex, FreeAndShiftedBounds) {
  // max -|x - 2| style: max -s s.t. s >= x - 2, s >= 2 - x, x free, s free.
  auto lp = LinearProgram::with_vars(2);
  lp.objective = {0.0, -1.0};
  lp.lower = {-unext::kInf, -unext::kInf};
  lp.add_constraint({-1.0, 1.0}, Relation::GreaterEq, -2.0);
  lp.add_constraint({1.0, 1.0}, Relation::GreaterEq, 2.0);
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 0.0, 1e-12);
  EXPECT_NEAR(sol.primal[0], 2.0, 1e-12);

  auto boxed = LinearProgram::with_vars(1);
  boxed.objective = {-1.0};
  boxed.lower = {-3.0};
  boxed.upper = {-1.0};
  const auto bs = solve_lp(boxed);
  ASSERT_EQ(bs.status, LpStatus::Optimal);
  EXPECT_NEAR(bs.primal[0], -3.0, 1e-12);

  auto upper_only = LinearProgram::with_vars(1);
  upper_only.objective = {1.0};
  upper_only.lower = {-unext::kInf};
  upper_only.upper = {4.5};
  EXPECT_NEAR(solve_lp(upper_only).objective_value, 4.5, 1e-12);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example cycles under the textbook largest-coefficient rule.
  auto lp = LinearProgram::with_vars(4);
  lp.objective = {0.75, -20.0, 0.5, -6.0};
  lp.add_constraint({0.25, -8.0, -1.0, 9.0}, Relation::LessEq, 0.0);
  lp.add_constraint({0.5, -12.0, -0.5, 3.0}, Relation::LessEq, 0.0);
  lp.add_constraint({0.0, 0.0, 1.0, 0.0}, Relation::LessEq, 1.0);
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 1.25, 1e-12);
}

TEST(Simplex, RedundantEqualities) {
  auto lp = LinearProgram::with_vars(1);
  lp.objective = {2.0};
  lp.lower = {-1.0};
  lp.upper = {5.0};
  lp.add_constraint({-4.0}, Relation::Equal, 4.0);
  lp.add_constraint({-3.0}, Relation::Equal, 3.0);
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, -2.0, 1e-12);
}

TEST(Simplex, EmptyRowsAreChecked) {
  auto lp = LinearProgram::with_vars(1);
  lp.objective = {1.0};
  lp.upper = {1.0};
  lp.add_constraint({0.0}, Relation::LessEq, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Optimal);
  lp.add_constraint({0.0}, Relation::GreaterEq, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(Simplex, DeterministicAcrossRuns) {
  auto lp = LinearProgram::with_vars(3);
  lp.objective = {1.0, 1.0, 1.0};
  lp.upper = {1.0, 1.0, 1.0};
  lp.add_constraint({1.0, 1.0, 1.0}, Relation::LessEq, 2.0);
  const auto a = solve_lp(lp);
  const auto b = solve_lp(lp);
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.pivots, b.pivots);
  EXPECT_EQ(a.objective_value, b.objective_value);
}

TEST(Simplex, PivotBudgetThrows) {
  auto lp = LinearProgram::with_vars(2);
  lp.objective = {3.0, 5.0};
  lp.add_constraint({1.0, 0.0}, Relation::LessEq, 4.0);
  lp.add_constraint({0.0, 2.0}, Relation::LessEq, 12.0);
  lp.add_constraint({3.0, 2.0}, Relation::LessEq, 18.0);
  unext::SimplexOptions opts;
  opts.max_pivots = 1;
  EXPECT_THROW(solve_lp(lp, opts), unext::NumericalFailure);
}

TEST(Simplex, ValidatesInput) {
  auto lp = LinearProgram::with_vars(2);
  lp.add_constraint({1.0}, Relation::LessEq, 1.0);
  EXPECT_THROW(solve_lp(lp), std::invalid_argument);
  EXPECT_THROW(LinearProgram::with_vars(0), std::invalid_argument);
}

}  // namespace
