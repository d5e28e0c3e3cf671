#include "wpress/fixtures.hpp"

#include <cmath>
#include <random>

namespace wpress::fixtures {

namespace {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

BoolMatrix golden_mean_matrix() {
  BoolMatrix m(2, 2);
  m << true, true, true, false;  // forbid "11"
  return m;
}

}  // namespace

ChainSystem fs42() {
  ChainSystem system;
  Alphabet top({"a", "b", "c", "d"});
  Alphabet bottom({"0", "1"});
  system.levels.push_back(Subshift::full_shift(top));
  system.levels.push_back(Subshift::full_shift(bottom));
  system.codes.emplace_back(top, bottom, std::vector<int>{0, 0, 1, 1});
  system.weights = {Rational(1, 1), Rational(1, 2)};
  return system;
}

ChainSystem gm_chain() {
  ChainSystem system;
  Alphabet binary({"0", "1"});
  system.levels.emplace_back(binary, golden_mean_matrix());
  system.levels.push_back(Subshift::full_shift(binary));
  system.codes.emplace_back(binary, binary, std::vector<int>{0, 1});
  system.weights = {Rational(1, 1), Rational(1, 1)};
  return system;
}

ChainSystem gm1() {
  ChainSystem system;
  Alphabet binary({"0", "1"});
  system.levels.emplace_back(binary, golden_mean_matrix());
  system.weights = {Rational(1, 1)};
  return system;
}

ChainSystem fs2() {
  ChainSystem system;
  system.levels.push_back(Subshift::full_shift(Alphabet({"0", "1"})));
  system.weights = {Rational(1, 1)};
  return system;
}

ChainSystem hidden3() {
  ChainSystem system;
  Alphabet top({"0", "1", "2"});
  Alphabet bottom({"a", "b"});
  BoolMatrix m(3, 3);
  m << true, true, true, true, false, true, true, true, true;  // forbid "11"
  system.levels.emplace_back(top, m);
  system.levels.push_back(Subshift::full_shift(bottom));
  system.codes.emplace_back(top, bottom, std::vector<int>{0, 1, 1});
  system.weights = {Rational(1, 1), Rational(1, 2)};
  return system;
}

ChainSystem fs421() {
  ChainSystem system;
  Alphabet top({"a", "b", "c", "d"});
  Alphabet mid({"0", "1"});
  Alphabet bottom({"z"});
  system.levels.push_back(Subshift::full_shift(top));
  system.levels.push_back(Subshift::full_shift(mid));
  system.levels.push_back(Subshift::full_shift(bottom));
  system.codes.emplace_back(top, mid, std::vector<int>{0, 0, 1, 1});
  system.codes.emplace_back(mid, bottom, std::vector<int>{0, 0});
  system.weights = {Rational(1, 1), Rational(1, 2), Rational(1, 4)};
  return system;
}

Potential f_zero() { return Potential::zero(); }

Potential f1() {
  std::map<Word, double> table;
  table[{0}] = std::log(2.0);
  return Potential(1, std::move(table));
}

Potential g01() {
  std::map<Word, double> table;
  table[{0, 1}] = 1.0;
  return Potential(2, std::move(table));
}

MarkovMeasure bernoulli_half(const ChainSystem& fs42_system) {
  Eigen::VectorXd p(4);
  p << 0.5, 0.25, 0.125, 0.125;
  return MarkovMeasure::bernoulli(fs42_system.levels[0], p);
}

MarkovMeasure uniform4(const ChainSystem& fs42_system) {
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.25);
  return MarkovMeasure::bernoulli(fs42_system.levels[0], p);
}

MarkovMeasure gm_markov(const ChainSystem& gm_system) {
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0.5, 1.0, 0.0;
  return MarkovMeasure(gm_system.levels[0], P);
}

MarkovMeasure hidden3_markov(const ChainSystem& hidden3_system) {
  Eigen::MatrixXd P(3, 3);
  P << 0.5, 0.25, 0.25, 0.6, 0.0, 0.4, 0.3, 0.4, 0.3;
  return MarkovMeasure(hidden3_system.levels[0], P);
}

MarkovMeasure random_markov(const Subshift& shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int n = shift.symbol_count();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    double row = 0;
    for (int v = 0; v < n; ++v)
      if (shift.allows(u, v)) {
        P(u, v) = 0.05 + unit();
        row += P(u, v);
      }
    P.row(u) /= row;
  }
  return MarkovMeasure(shift, P);
}

}  // namespace wpress::fixtures
