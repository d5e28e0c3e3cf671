#pragma once

#include <Eigen/Dense>

namespace wpress {

// Dense two-phase tableau simplex, deterministic: Dantzig pricing with
// lowest-index tie-breaks, switching to Bland's rule after a degenerate
// streak. Desk-scale instances only.
struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::optimal;
  double value = 0.0;
  Eigen::VectorXd primal;  // structural variables
  Eigen::VectorXd dual;    // one multiplier per constraint
  long iterations = 0;
};

inline constexpr double kLpFeasibilityTol = 1e-9;

// min c^T x  subject to  A x >= b, x >= 0, with b >= 0.
// dual: y >= 0, y^T A <= c, y^T b = value.
LpSolution solve_min_ge(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c);

// max c^T x  subject to  A x <= b, x >= 0, with b >= 0.
// dual: y >= 0, y^T A >= c, y^T b = value.
LpSolution solve_max_le(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c);

}  // namespace wpress
