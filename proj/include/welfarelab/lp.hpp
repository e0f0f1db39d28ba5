#pragma once

// Small dense linear programs solved by the two-phase simplex method with
// Bland's anti-cycling rule. Sized for the checkers in aggregation.hpp:
// tens of variables and constraints.
//
//   minimize    c^T x
//   subject to  a_r^T x  (<= | = | >=)  b_r   for every row r
//               x >= 0

#include <cstddef>
#include <vector>

namespace welfarelab::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation;
  double rhs;
};

struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // minimized
  std::vector<Constraint> constraints;

  explicit Problem(std::size_t n) : num_vars(n), objective(n, 0.0) {}
  void add(std::vector<double> coeffs, Relation rel, double rhs);
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Phase-one residual above this is infeasible.
inline constexpr double kFeasibilityTol = 1e-9;

Solution solve(const Problem& problem);

}  // namespace welfarelab::lp
