#include "welfarelab/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "welfarelab/errors.hpp"

namespace welfarelab::lp {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kReducedCostTol = 1e-11;
constexpr int kMaxIterations = 100000;

class Tableau {
 public:
  Tableau(const Problem& problem) : num_original_(problem.num_vars) {
    const std::size_t m = problem.constraints.size();
    std::size_t num_slack = 0, num_artificial = 0;
    for (const auto& c : problem.constraints) {
      const Relation rel = c.rhs < 0 ? flip(c.relation) : c.relation;
      if (rel != Relation::kEqual) ++num_slack;
      if (rel != Relation::kLessEqual) ++num_artificial;
    }
    first_artificial_ = num_original_ + num_slack;
    num_cols_ = first_artificial_ + num_artificial;
    rows_.assign(m, std::vector<double>(num_cols_ + 1, 0.0));
    basis_.assign(m, 0);

    std::size_t next_slack = num_original_, next_artificial = first_artificial_;
    for (std::size_t r = 0; r < m; ++r) {
      const Constraint& c = problem.constraints[r];
      const double sign = c.rhs < 0 ? -1.0 : 1.0;
      const Relation rel = c.rhs < 0 ? flip(c.relation) : c.relation;
      auto& row = rows_[r];
      for (std::size_t j = 0; j < num_original_; ++j) row[j] = sign * c.coeffs[j];
      row[num_cols_] = sign * c.rhs;
      if (rel == Relation::kLessEqual) {
        row[next_slack] = 1.0;
        basis_[r] = next_slack++;
      } else {
        if (rel == Relation::kGreaterEqual) row[next_slack++] = -1.0;
        row[next_artificial] = 1.0;
        basis_[r] = next_artificial++;
      }
    }
  }

  // Phase one; returns false when the constraints admit no solution.
  bool find_feasible_basis() {
    std::vector<double> cost(num_cols_, 0.0);
    for (std::size_t j = first_artificial_; j < num_cols_; ++j) cost[j] = 1.0;
    load_objective(cost);
    if (optimize(num_cols_) != Status::kOptimal) return false;
    if (-objective_[num_cols_] > kFeasibilityTol) return false;
    evict_artificials();
    return true;
  }

  Status minimize(const std::vector<double>& c) {
    std::vector<double> cost(num_cols_, 0.0);
    for (std::size_t j = 0; j < num_original_; ++j) cost[j] = c[j];
    load_objective(cost);
    return optimize(first_artificial_);
  }

  std::vector<double> primal() const {
    std::vector<double> x(num_original_, 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < num_original_) x[basis_[r]] = rows_[r][num_cols_];
    }
    return x;
  }

 private:
  static Relation flip(Relation rel) {
    switch (rel) {
      case Relation::kLessEqual: return Relation::kGreaterEqual;
      case Relation::kGreaterEqual: return Relation::kLessEqual;
      case Relation::kEqual: return Relation::kEqual;
    }
    return rel;
  }

  void load_objective(const std::vector<double>& cost) {
    objective_.assign(num_cols_ + 1, 0.0);
    for (std::size_t j = 0; j < num_cols_; ++j) objective_[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) objective_[j] -= cb * rows_[r][j];
    }
  }

  // Columns at or beyond `col_limit` never enter the basis.
  Status optimize(std::size_t col_limit) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      std::size_t entering = col_limit;
      for (std::size_t j = 0; j < col_limit; ++j) {
        if (objective_[j] < -kReducedCostTol) {
          entering = j;
          break;
        }
      }
      if (entering == col_limit) return Status::kOptimal;

      std::size_t leaving = rows_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const double a = rows_[r][entering];
        if (a <= kPivotTol) continue;
        const double ratio = rows_[r][num_cols_] / a;
        if (ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && basis_[r] < basis_[leaving])) {
          best_ratio = ratio;
          leaving = r;
        }
      }
      if (leaving == rows_.size()) return Status::kUnbounded;
      pivot(leaving, entering);
    }
    throw Error(ErrorCode::kDomainError, "simplex iteration limit reached");
  }

  void pivot(std::size_t r, std::size_t col) {
    auto& prow = rows_[r];
    const double inv = 1.0 / prow[col];
    for (double& v : prow) v *= inv;
    prow[col] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const double f = rows_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) rows_[i][j] -= f * prow[j];
      rows_[i][col] = 0.0;
    }
    const double f = objective_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= num_cols_; ++j) objective_[j] -= f * prow[j];
      objective_[col] = 0.0;
    }
    basis_[r] = col;
  }

  // Pivots artificial variables (all at zero after phase one) out of the
  // basis; rows where that is impossible are redundant and dropped.
  void evict_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(rows_[r][j]) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < first_artificial_) {
        pivot(r, col);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t num_original_;
  std::size_t first_artificial_ = 0;
  std::size_t num_cols_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<double> objective_;
};

}  // namespace

void Problem::add(std::vector<double> coeffs, Relation rel, double rhs) {
  if (coeffs.size() != num_vars) {
    throw Error(ErrorCode::kDimensionMismatch,
                "constraint has " + std::to_string(coeffs.size()) + " coefficients for " +
                    std::to_string(num_vars) + " variables");
  }
  constraints.push_back(Constraint{std::move(coeffs), rel, rhs});
}

Solution solve(const Problem& problem) {
  if (problem.objective.size() != problem.num_vars) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length differs from variable count");
  }
  Tableau tableau(problem);
  Solution out;
  if (!tableau.find_feasible_basis()) {
    out.status = Status::kInfeasible;
    return out;
  }
  out.status = tableau.minimize(problem.objective);
  out.x = tableau.primal();
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    out.objective += problem.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace welfarelab::lp
