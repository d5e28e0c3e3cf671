#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wpress/simplex.hpp"

using namespace wpress;

TEST_CASE("textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  Eigen::VectorXd b(3);
  b << 4, 12, 18;
  Eigen::VectorXd c(2);
  c << 3, 5;
  LpSolution sol = solve_max_le(A, b, c);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.value == doctest::Approx(36.0).epsilon(1e-12));
  CHECK(sol.primal(0) == doctest::Approx(2.0));
  CHECK(sol.primal(1) == doctest::Approx(6.0));
  // The dual certifies the optimum: y^T b = value, y^T A >= c.
  CHECK(sol.dual.dot(b) == doctest::Approx(36.0).epsilon(1e-12));
  CHECK((sol.dual.transpose() * A)(0) >= c(0) - 1e-9);
  CHECK((sol.dual.transpose() * A)(1) >= c(1) - 1e-9);
}

TEST_CASE("unbounded detection") {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(2);
  c << 0, 1;
  CHECK(solve_max_le(A, b, c).status == LpSolution::Status::unbounded);
}

TEST_CASE("covering minimum with known answer") {
  // min x + y s.t. x + y >= 1, x >= 0.25 -> 1 with x = 0.25..1 on a face.
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 1, 0;
  Eigen::VectorXd b(2);
  b << 1, 0.25;
  Eigen::VectorXd c(2);
  c << 1, 1;
  LpSolution sol = solve_min_ge(A, b, c);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((A * sol.primal - b).minCoeff() >= -1e-9);
}

TEST_CASE("disjoint covering forces unit coefficients") {
  // Identity constraint matrix: optimal cost is the sum of the weights.
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  Eigen::VectorXd c(4);
  c << 0.5, 2.0, 1.0, 0.25;
  LpSolution sol = solve_min_ge(A, b, c);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.value == doctest::Approx(3.75).epsilon(1e-12));
  for (int i = 0; i < 4; ++i) CHECK(sol.primal(i) == doctest::Approx(1.0));
}

TEST_CASE("random covering instances satisfy strong duality") {
  std::mt19937_64 rng(12345);
  auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 3 + static_cast<int>(rng() % 6);
    const int cols = 3 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd A(rows, cols);
    for (int r = 0; r < rows; ++r) {
      bool any = false;
      for (int j = 0; j < cols; ++j) {
        A(r, j) = unit() < 0.5 ? 1.0 : 0.0;
        any |= A(r, j) > 0;
      }
      if (!any) A(r, static_cast<int>(rng() % cols)) = 1.0;  // keep it coverable
    }
    Eigen::VectorXd b = Eigen::VectorXd::Ones(rows);
    Eigen::VectorXd c(cols);
    for (int j = 0; j < cols; ++j) c(j) = 0.1 + unit();

    LpSolution cover = solve_min_ge(A, b, c);
    REQUIRE(cover.status == LpSolution::Status::optimal);
    // Packing dual: max 1^T y s.t. A^T y <= c.
    LpSolution pack = solve_max_le(A.transpose(), c, b);
    REQUIRE(pack.status == LpSolution::Status::optimal);
    CHECK(cover.value == doctest::Approx(pack.value).epsilon(1e-9));

    // Feasibility of both solutions.
    CHECK((A * cover.primal - b).minCoeff() >= -1e-9);
    CHECK((A.transpose() * pack.primal - c).maxCoeff() <= 1e-9);
    // Dual read off the covering solve is feasible for the packing form.
    CHECK(cover.dual.minCoeff() >= -1e-12);
    CHECK((A.transpose() * cover.dual - c).maxCoeff() <= 1e-9);
    CHECK(cover.dual.sum() == doctest::Approx(cover.value).epsilon(1e-9));
  }
}

TEST_CASE("degenerate instances still terminate") {
  // Many redundant identical rows provoke degenerate pivots.
  Eigen::MatrixXd A(6, 2);
  for (int r = 0; r < 6; ++r) A.row(r) << 1, 1;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(6);
  Eigen::VectorXd c(2);
  c << 1.0, 1.0;
  LpSolution sol = solve_min_ge(A, b, c);
  REQUIRE(sol.status == LpSolution::Status::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
}
