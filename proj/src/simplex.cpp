#include "wpress/simplex.hpp"

#include <stdexcept>
#include <vector>

namespace wpress {

namespace {

constexpr double kTol = kLpFeasibilityTol;
constexpr long kDegenerateStreakLimit = 64;

struct Unbounded {};

// Tableau with rows = constraints, columns = variables plus rhs. The
// objective row holds reduced costs for a maximization problem.
struct Tableau {
  Eigen::MatrixXd body;      // m x (ncols + 1)
  Eigen::RowVectorXd zrow;   // 1 x (ncols + 1)
  std::vector<int> basis;    // basic variable per row
  std::vector<bool> banned;  // columns barred from entering
  long iterations = 0;

  int rows() const { return static_cast<int>(body.rows()); }
  int cols() const { return static_cast<int>(body.cols()) - 1; }

  void pivot(int row, int col) {
    body.row(row) /= body(row, col);
    for (int r = 0; r < rows(); ++r) {
      if (r == row) continue;
      double factor = body(r, col);
      if (factor != 0.0) body.row(r) -= factor * body.row(row);
    }
    double zf = zrow(col);
    if (zf != 0.0) zrow -= zf * body.row(row);
    basis[static_cast<size_t>(row)] = col;
    ++iterations;
  }

  // Returns false when the current basis is optimal; throws on unbounded.
  bool step(bool bland) {
    int enter = -1;
    if (bland) {
      for (int j = 0; j < cols(); ++j)
        if (!banned[static_cast<size_t>(j)] && zrow(j) < -kTol) {
          enter = j;
          break;
        }
    } else {
      double best = -kTol;
      for (int j = 0; j < cols(); ++j)
        if (!banned[static_cast<size_t>(j)] && zrow(j) < best) {
          best = zrow(j);
          enter = j;
        }
    }
    if (enter < 0) return false;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < rows(); ++r) {
      double a = body(r, enter);
      if (a <= kTol) continue;
      double ratio = body(r, cols()) / a;
      if (leave < 0 || ratio < best_ratio - kTol ||
          (ratio < best_ratio + kTol &&
           basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw Unbounded{};
    pivot(leave, enter);
    return true;
  }

  void run() {
    long degenerate_streak = 0;
    bool bland = false;
    double last_value = value();
    while (step(bland)) {
      double v = value();
      if (v <= last_value + 1e-14) {
        if (++degenerate_streak > kDegenerateStreakLimit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
      last_value = v;
    }
  }

  double value() const { return zrow(cols()); }
};

// Rebuild the reduced-cost row for objective `obj` (maximization) under the
// current basis.
void rebuild_zrow(Tableau& t, const Eigen::RowVectorXd& obj) {
  t.zrow.setZero(t.cols() + 1);
  t.zrow.head(t.cols()) = -obj;
  for (int r = 0; r < t.rows(); ++r) {
    double cb = obj(t.basis[static_cast<size_t>(r)]);
    if (cb != 0.0) t.zrow += cb * t.body.row(r);
  }
}

}  // namespace

LpSolution solve_max_le(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.minCoeff() < 0) throw std::invalid_argument("solve_max_le expects b >= 0");

  Tableau t;
  const int ncols = n + m;
  t.body.setZero(m, ncols + 1);
  t.body.block(0, 0, m, n) = A;
  t.body.block(0, n, m, m).setIdentity();
  t.body.col(ncols) = b;
  t.basis.resize(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) t.basis[static_cast<size_t>(r)] = n + r;
  t.banned.assign(static_cast<size_t>(ncols), false);

  Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(ncols + 1);
  obj.head(n) = c.transpose();
  rebuild_zrow(t, obj);

  LpSolution out;
  try {
    t.run();
  } catch (const Unbounded&) {
    out.status = LpSolution::Status::unbounded;
    return out;
  }

  out.status = LpSolution::Status::optimal;
  out.value = t.value();
  out.primal = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r)
    if (t.basis[static_cast<size_t>(r)] < n)
      out.primal(t.basis[static_cast<size_t>(r)]) = t.body(r, ncols);
  out.dual = t.zrow.segment(n, m).transpose();
  out.iterations = t.iterations;
  return out;
}

LpSolution solve_min_ge(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.minCoeff() < 0) throw std::invalid_argument("solve_min_ge expects b >= 0");

  // A x - s + a = b; phase 1 drives the artificial block a to zero.
  Tableau t;
  const int ncols = n + m + m;
  t.body.setZero(m, ncols + 1);
  t.body.block(0, 0, m, n) = A;
  t.body.block(0, n, m, m) = -Eigen::MatrixXd::Identity(m, m);
  t.body.block(0, n + m, m, m).setIdentity();
  t.body.col(ncols) = b;
  t.basis.resize(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) t.basis[static_cast<size_t>(r)] = n + m + r;
  t.banned.assign(static_cast<size_t>(ncols), false);

  Eigen::RowVectorXd phase1 = Eigen::RowVectorXd::Zero(ncols + 1);
  phase1.segment(n + m, m).setConstant(-1.0);
  rebuild_zrow(t, phase1);

  LpSolution out;
  try {
    t.run();
  } catch (const Unbounded&) {
    out.status = LpSolution::Status::unbounded;  // cannot happen in phase 1
    return out;
  }
  if (t.value() < -1e-7) {
    out.status = LpSolution::Status::infeasible;
    return out;
  }

  // Pivot zero-level artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (t.basis[static_cast<size_t>(r)] < n + m) continue;
    for (int j = 0; j < n + m; ++j) {
      if (std::abs(t.body(r, j)) > kTol) {
        t.pivot(r, j);
        break;
      }
    }
  }
  for (int j = n + m; j < ncols; ++j) t.banned[static_cast<size_t>(j)] = true;

  Eigen::RowVectorXd phase2 = Eigen::RowVectorXd::Zero(ncols + 1);
  phase2.head(n) = -c.transpose();  // maximize -c^T x
  rebuild_zrow(t, phase2);
  try {
    t.run();
  } catch (const Unbounded&) {
    out.status = LpSolution::Status::unbounded;
    return out;
  }

  out.status = LpSolution::Status::optimal;
  out.value = -t.value();
  out.primal = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r)
    if (t.basis[static_cast<size_t>(r)] < n)
      out.primal(t.basis[static_cast<size_t>(r)]) = t.body(r, ncols);
  // Multipliers read off the surplus columns give the dual of the min form.
  out.dual = t.zrow.segment(n, m).transpose();
  out.iterations = t.iterations;
  return out;
}

}  // namespace wpress
