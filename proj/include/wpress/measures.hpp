#pragma once

#include <Eigen/Dense>

#include "wpress/weighted_cylinders.hpp"

namespace wpress {

// Stationary order-1 Markov measure supported on the allowed transitions of
// a subshift. Irreducible support is required, which makes the measure
// ergodic and the stationary vector unique.
class MarkovMeasure {
 public:
  MarkovMeasure(const Subshift& shift, Eigen::MatrixXd transition);

  static MarkovMeasure bernoulli(const Subshift& full_shift,
                                 const Eigen::VectorXd& p);

  int states() const { return static_cast<int>(transition_.rows()); }
  const Eigen::MatrixXd& transition() const { return transition_; }
  const Eigen::VectorXd& stationary() const { return stationary_; }
  bool is_bernoulli() const;

 private:
  Eigen::MatrixXd transition_;
  Eigen::VectorXd stationary_;
};

Eigen::VectorXd stationary(const MarkovMeasure& markov);

// Kolmogorov-Sinai entropy -sum_u pi_u sum_v P_uv log P_uv (nats).
double entropy(const MarkovMeasure& markov);

struct BlockDist {
  int level = 0;
  int len = 0;
  std::vector<Word> words;  // lexicographic, admissible at the level
  Eigen::VectorXd prob;
};

// Exact image distribution of level-`level` words of length L under the
// cascade code, computed by DP over level-1 preimage states.
BlockDist pushforward_block_dist(const ChainSystem& system, const MarkovMeasure& markov,
                                 int level, int L,
                                 std::uint64_t cap = kDefaultEnumerationCap);

struct EntropyBracket {
  double lower = 0;
  double upper = 0;
  int L = 0;
  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

// Hidden-Markov entropy bracket for the pushforward to `level`:
//   upper = H(Y_{L+1} | Y_1..Y_L),
//   lower = H(Y_{L+1} | Y_2..Y_L, initial hidden state).
// Upper is nonincreasing and lower nondecreasing in L; both are exact.
EntropyBracket hm_entropy_bracket(const ChainSystem& system, const MarkovMeasure& markov,
                                  int level, int L,
                                  std::uint64_t cap = kDefaultEnumerationCap);

double integral(const ChainSystem& system, const MarkovMeasure& markov,
                const Potential& potential);

// Exact mass of a weighted cylinder under the level-1 Markov measure.
double wcyl_mass(const ChainSystem& system, const MarkovMeasure& markov,
                 const WeightedCylinder& cylinder);

// (1/N) E[-log mu(weighted N-cylinder of x)]; window-decomposed closed form
// for Bernoulli measures on a full first level, cylinder enumeration
// otherwise.
double smb_expected_rate(const ChainSystem& system, const MarkovMeasure& markov, int N,
                         std::uint64_t cap = kDefaultEnumerationCap);

struct SmbSampleStats {
  double expected_rate = 0;
  double sample_mean = 0;
  double sample_stddev = 0;
  double sigma_mean = 0;
  int orbits = 0;
  bool within_3_sigma = false;
};

SmbSampleStats smb_sampled(const ChainSystem& system, const MarkovMeasure& markov, int N,
                           int orbits, std::uint64_t seed);

// An arbitrary Borel probability measure presented through its distribution
// on admissible words of a fixed length.
struct WordDistribution {
  int len = 0;
  std::vector<Word> words;
  Eigen::VectorXd prob;
};

WordDistribution point_mass_distribution(const Subshift& shift, const Word& periodic_block,
                                         int len);
WordDistribution uniform_word_distribution(const Subshift& shift, int len);
WordDistribution random_word_distribution(const Subshift& shift, int len,
                                          std::uint64_t seed);

struct AvgEntropyReport {
  double lhs = 0;       // (1/n) H_nu of the n-step join
  double rhs_block = 0; // (1/l) H_{nu_n} of the l-step join
  double rhs_slack = 0; // (2l/n) log M
  bool holds = false;
};

// Averaging inequality for an arbitrary word distribution (n >= 2l):
//   lhs <= rhs_block + rhs_slack.
AvgEntropyReport avg_entropy_inequality_check(const Subshift& shift,
                                              const WordDistribution& nu, int alpha_len,
                                              int n, int l);

struct ContinuityReport {
  double h_n = 0;
  double h_n1 = 0;
  double bound = 0;  // log(3 M^2 (n+1)) / (n+1)
  bool holds = false;
};

// Cesaro block-entropy continuity |h(n+1) - h(n)| against its bound.
ContinuityReport block_entropy_continuity_check(const Subshift& shift,
                                                const WordDistribution& nu, int alpha_len,
                                                int n);

struct PartitionCover {
  CoverFamily cover;
  bool delta_independent = true;  // clopen partitions need no delta fattening
};

// Clopen specialization of the cover-from-partition construction: the
// partition itself is the cover; the empty slack member is dropped and the
// output does not depend on delta.
PartitionCover cover_from_partition(const ChainSystem& system, int level,
                                    const std::vector<std::vector<Word>>& classes,
                                    double delta);

}  // namespace wpress
