#include "wpress/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace wpress {

namespace {

constexpr double kStochasticTol = 1e-12;

double xlogx(double p) { return p > 0 ? p * std::log(p) : 0.0; }

double dist_entropy(const Eigen::VectorXd& p) {
  double h = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) h -= xlogx(p(i));
  return h;
}

// Deterministic uniform in [0,1) from a raw 64-bit generator.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool support_irreducible(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  auto reach = [&](bool transpose) {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        double w = transpose ? P(v, u) : P(u, v);
        if (w > 0 && !seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  auto fwd = reach(false), bwd = reach(true);
  for (int v = 0; v < n; ++v)
    if (!fwd[static_cast<size_t>(v)] || !bwd[static_cast<size_t>(v)]) return false;
  return true;
}

}  // namespace

MarkovMeasure::MarkovMeasure(const Subshift& shift, Eigen::MatrixXd transition)
    : transition_(std::move(transition)) {
  const int n = shift.symbol_count();
  if (transition_.rows() != n || transition_.cols() != n)
    throw std::invalid_argument("transition matrix shape does not match the subshift");
  for (int u = 0; u < n; ++u) {
    double row = 0;
    for (int v = 0; v < n; ++v) {
      double p = transition_(u, v);
      if (p < 0) throw std::invalid_argument("negative transition probability");
      if (p > 0 && !shift.allows(u, v))
        throw std::invalid_argument("measure puts mass on a forbidden transition");
      row += p;
    }
    if (std::abs(row - 1.0) > kStochasticTol)
      throw std::invalid_argument("transition row " + std::to_string(u) +
                                  " sums to " + std::to_string(row));
  }
  if (!support_irreducible(transition_))
    throw std::invalid_argument("transition support is reducible");

  // pi (P - I) = 0 with sum(pi) = 1: replace one equation by normalization.
  Eigen::MatrixXd A = transition_.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  stationary_ = A.fullPivLu().solve(rhs);
  stationary_ = stationary_.cwiseMax(0.0);
  stationary_ /= stationary_.sum();
  double residual = (stationary_.transpose() * transition_ -
                     stationary_.transpose()).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw std::runtime_error("stationary vector residual " + std::to_string(residual));
}

MarkovMeasure MarkovMeasure::bernoulli(const Subshift& full_shift,
                                       const Eigen::VectorXd& p) {
  const int n = full_shift.symbol_count();
  Eigen::MatrixXd P(n, n);
  for (int u = 0; u < n; ++u) P.row(u) = p.transpose();
  return MarkovMeasure(full_shift, P);
}

bool MarkovMeasure::is_bernoulli() const {
  for (int u = 1; u < states(); ++u)
    if ((transition_.row(u) - transition_.row(0)).cwiseAbs().maxCoeff() > 1e-14)
      return false;
  return true;
}

Eigen::VectorXd stationary(const MarkovMeasure& markov) { return markov.stationary(); }

double entropy(const MarkovMeasure& markov) {
  double h = 0;
  for (int u = 0; u < markov.states(); ++u)
    for (int v = 0; v < markov.states(); ++v)
      h -= markov.stationary()(u) * xlogx(markov.transition()(u, v));
  return h;
}

BlockDist pushforward_block_dist(const ChainSystem& system, const MarkovMeasure& markov,
                                 int level, int L, std::uint64_t cap) {
  if (L < 1) throw std::invalid_argument("block length must be >= 1");
  if (level < 0 || level >= system.depth()) throw std::invalid_argument("bad level");
  const Subshift& target = system.levels[static_cast<size_t>(level)];
  const std::vector<int> casc = system.cascade(level);
  const int a1 = markov.states();

  BlockDist dist;
  dist.level = level;
  dist.len = L;
  dist.words = words(target, L, cap);
  dist.prob.resize(static_cast<Eigen::Index>(dist.words.size()));
  Eigen::VectorXd alpha(a1), next(a1);
  for (size_t wi = 0; wi < dist.words.size(); ++wi) {
    const Word& w = dist.words[wi];
    for (int x = 0; x < a1; ++x)
      alpha(x) = casc[static_cast<size_t>(x)] == w[0] ? markov.stationary()(x) : 0.0;
    for (size_t t = 1; t < w.size(); ++t) {
      next.setZero();
      for (int y = 0; y < a1; ++y) {
        if (casc[static_cast<size_t>(y)] != w[t]) continue;
        double acc = 0;
        for (int x = 0; x < a1; ++x) acc += alpha(x) * markov.transition()(x, y);
        next(y) = acc;
      }
      alpha.swap(next);
    }
    dist.prob(static_cast<Eigen::Index>(wi)) = alpha.sum();
  }
  return dist;
}

namespace {

// H of the image word distribution of length `len` (len = 0 gives 0), and
// joint entropy of (initial hidden state, next `len` emissions).
struct BlockEntropies {
  double plain = 0;
  double joint_with_state = 0;
};

BlockEntropies block_entropies(const ChainSystem& system, const MarkovMeasure& markov,
                               int level, int len, std::uint64_t cap) {
  const std::vector<int> casc = system.cascade(level);
  const int a1 = markov.states();

  BlockEntropies out;
  if (len == 0) {
    out.plain = 0;
    out.joint_with_state = dist_entropy(markov.stationary());
    return out;
  }

  BigInt count = word_count(system.levels[static_cast<size_t>(level)], len);
  if (count > BigInt(cap))
    throw ResourceCapError("block entropy scan of " + count.str() +
                           " image words exceeds cap");

  // Masked transition per emitted symbol: state x emits casc(x).
  const int b = system.levels[static_cast<size_t>(level)].symbol_count();
  std::vector<Eigen::MatrixXd> masked(static_cast<size_t>(b));
  for (int sym = 0; sym < b; ++sym) {
    masked[static_cast<size_t>(sym)] = markov.transition();
    for (int y = 0; y < a1; ++y)
      if (casc[static_cast<size_t>(y)] != sym)
        masked[static_cast<size_t>(sym)].col(y).setZero();
  }

  // DFS over image words; M rows index the initial state, columns the
  // current state, starting from diag(pi) one step before the emissions.
  std::vector<Eigen::MatrixXd> stack;
  stack.reserve(static_cast<size_t>(len) + 1);
  stack.push_back(Eigen::MatrixXd(markov.stationary().asDiagonal()));
  Word word(static_cast<size_t>(len));
  int pos = 0;
  word[0] = -1;
  double plain = 0, joint = 0;
  while (pos >= 0) {
    int& sym = word[static_cast<size_t>(pos)];
    ++sym;
    if (sym >= b) {
      --pos;
      stack.pop_back();
      continue;
    }
    Eigen::MatrixXd next = stack.back() * masked[static_cast<size_t>(sym)];
    if (next.sum() <= 0) continue;
    if (pos == len - 1) {
      plain -= xlogx(next.sum());
      for (int x = 0; x < a1; ++x) joint -= xlogx(next.row(x).sum());
    } else {
      stack.push_back(std::move(next));
      ++pos;
      word[static_cast<size_t>(pos)] = -1;
    }
  }
  out.plain = plain;
  out.joint_with_state = joint;
  return out;
}

}  // namespace

EntropyBracket hm_entropy_bracket(const ChainSystem& system, const MarkovMeasure& markov,
                                  int level, int L, std::uint64_t cap) {
  if (L < 1) throw std::invalid_argument("conditioning length must be >= 1");
  BlockEntropies at_L = block_entropies(system, markov, level, L, cap);
  BlockEntropies at_L1 = block_entropies(system, markov, level, L + 1, cap);
  EntropyBracket bracket;
  bracket.L = L;
  bracket.upper = at_L1.plain - at_L.plain;
  bracket.lower = at_L1.joint_with_state - at_L.joint_with_state;
  return bracket;
}

double integral(const ChainSystem&, const MarkovMeasure& markov,
                const Potential& potential) {
  double acc = 0;
  for (const auto& [w, v] : potential.table()) {
    double mass = markov.stationary()(w[0]);
    for (size_t t = 0; t + 1 < w.size(); ++t) mass *= markov.transition()(w[t], w[t + 1]);
    acc += mass * v;
  }
  return acc;
}

double wcyl_mass(const ChainSystem& system, const MarkovMeasure& markov,
                 const WeightedCylinder& cylinder) {
  auto problems = validate_cylinder(system, cylinder);
  if (!problems.empty()) throw std::invalid_argument("invalid cylinder: " + problems[0]);
  CylinderWalk walk(system, cylinder.n);
  const long len = walk.total_len();
  const int a1 = markov.states();

  // Per position, the level-1 symbol must lift to the pinned owner symbol.
  auto allowed_at = [&](long j, int x) {
    int owner = walk.owner(j);
    return walk.lift(0, owner, x) ==
           cylinder.level_words[static_cast<size_t>(owner)][static_cast<size_t>(j)];
  };

  Eigen::VectorXd alpha(a1), next(a1);
  for (int x = 0; x < a1; ++x)
    alpha(x) = allowed_at(0, x) ? markov.stationary()(x) : 0.0;
  for (long j = 1; j < len; ++j) {
    next.setZero();
    for (int y = 0; y < a1; ++y) {
      if (!allowed_at(j, y)) continue;
      double acc = 0;
      for (int x = 0; x < a1; ++x) acc += alpha(x) * markov.transition()(x, y);
      next(y) = acc;
    }
    alpha.swap(next);
  }
  return alpha.sum();
}

double smb_expected_rate(const ChainSystem& system, const MarkovMeasure& markov, int N,
                         std::uint64_t cap) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  CylinderWalk walk(system, N);

  bool full_level1 = true;
  const Subshift& level1 = system.levels[0];
  for (int u = 0; u < level1.symbol_count() && full_level1; ++u)
    for (int v = 0; v < level1.symbol_count(); ++v) full_level1 &= level1.allows(u, v);

  if (full_level1 && markov.is_bernoulli()) {
    // Positions are independent; each contributes the entropy of the image
    // distribution at its owner level.
    const Eigen::VectorXd p = markov.transition().row(0).transpose();
    double h = 0;
    for (long j = 0; j < walk.total_len(); ++j) {
      const int lvl = walk.owner(j);
      const int b = system.levels[static_cast<size_t>(lvl)].symbol_count();
      Eigen::VectorXd q = Eigen::VectorXd::Zero(b);
      for (int x = 0; x < markov.states(); ++x) q(walk.lift(0, lvl, x)) += p(x);
      h += dist_entropy(q);
    }
    return h / N;
  }

  BigInt count = count_weighted_cylinders(system, N);
  if (count > BigInt(cap))
    throw ResourceCapError("smb rate needs " + count.str() + " cylinders, cap " +
                           std::to_string(cap));
  double h = 0;
  for_each_weighted_cylinder(system, N, [&](std::span<const int> key) {
    WeightedCylinder cyl = walk.cylinder_from_key(key);
    h -= xlogx(wcyl_mass(system, markov, cyl));
  });
  return h / N;
}

SmbSampleStats smb_sampled(const ChainSystem& system, const MarkovMeasure& markov, int N,
                           int orbits, std::uint64_t seed) {
  if (orbits < 2) throw std::invalid_argument("need at least 2 orbits");
  CylinderWalk walk(system, N);
  const long len = walk.total_len();
  std::mt19937_64 rng(seed);

  auto draw = [&](const Eigen::VectorXd& weights) {
    double u = unit_double(rng) * weights.sum();
    for (int i = 0; i < weights.size(); ++i) {
      u -= weights(i);
      if (u <= 0) return i;
    }
    return static_cast<int>(weights.size()) - 1;
  };

  SmbSampleStats stats;
  stats.orbits = orbits;
  stats.expected_rate = smb_expected_rate(system, markov, N);

  double sum = 0, sumsq = 0;
  Word prefix(static_cast<size_t>(len));
  for (int o = 0; o < orbits; ++o) {
    prefix[0] = draw(markov.stationary());
    for (long j = 1; j < len; ++j)
      prefix[static_cast<size_t>(j)] =
          draw(markov.transition().row(prefix[static_cast<size_t>(j - 1)]).transpose());
    Word key = walk.key_of_prefix(prefix);
    double mass = wcyl_mass(system, markov, walk.cylinder_from_key(key));
    double rate = -std::log(mass) / N;
    sum += rate;
    sumsq += rate * rate;
  }
  stats.sample_mean = sum / orbits;
  double var = std::max(0.0, sumsq / orbits - stats.sample_mean * stats.sample_mean);
  stats.sample_stddev = std::sqrt(var * orbits / (orbits - 1));
  stats.sigma_mean = stats.sample_stddev / std::sqrt(static_cast<double>(orbits));
  stats.within_3_sigma =
      std::abs(stats.sample_mean - stats.expected_rate) <= 3.0 * stats.sigma_mean;
  return stats;
}

WordDistribution point_mass_distribution(const Subshift& shift, const Word& periodic_block,
                                         int len) {
  if (periodic_block.empty()) throw std::invalid_argument("empty periodic block");
  Word w(static_cast<size_t>(len));
  for (int j = 0; j < len; ++j) w[static_cast<size_t>(j)] = periodic_block[j % periodic_block.size()];
  if (!shift.admissible(w))
    throw std::invalid_argument("periodic block is not admissible");
  WordDistribution nu;
  nu.len = len;
  nu.words = {std::move(w)};
  nu.prob = Eigen::VectorXd::Ones(1);
  return nu;
}

WordDistribution uniform_word_distribution(const Subshift& shift, int len) {
  WordDistribution nu;
  nu.len = len;
  nu.words = words(shift, len);
  nu.prob = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(nu.words.size()),
                                      1.0 / static_cast<double>(nu.words.size()));
  return nu;
}

WordDistribution random_word_distribution(const Subshift& shift, int len,
                                          std::uint64_t seed) {
  WordDistribution nu;
  nu.len = len;
  nu.words = words(shift, len);
  nu.prob.resize(static_cast<Eigen::Index>(nu.words.size()));
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < nu.prob.size(); ++i)
    nu.prob(i) = -std::log(1.0 - unit_double(rng));  // exponential weights
  nu.prob /= nu.prob.sum();
  return nu;
}

namespace {

// Entropy of the marginal of nu on coordinates [from, from+width).
double marginal_entropy(const WordDistribution& nu, int from, int width) {
  std::map<Word, double> acc;
  for (size_t i = 0; i < nu.words.size(); ++i) {
    Word key(nu.words[i].begin() + from, nu.words[i].begin() + from + width);
    acc[std::move(key)] += nu.prob(static_cast<Eigen::Index>(i));
  }
  double h = 0;
  for (const auto& [w, p] : acc) h -= xlogx(p);
  return h;
}

// Entropy of the Cesaro average over shifts i in [0, count) of the width
// marginal starting at i.
double cesaro_entropy(const WordDistribution& nu, int count, int width) {
  std::map<Word, double> acc;
  for (int i = 0; i < count; ++i)
    for (size_t wi = 0; wi < nu.words.size(); ++wi) {
      Word key(nu.words[wi].begin() + i, nu.words[wi].begin() + i + width);
      acc[std::move(key)] += nu.prob(static_cast<Eigen::Index>(wi)) / count;
    }
  double h = 0;
  for (const auto& [w, p] : acc) h -= xlogx(p);
  return h;
}

}  // namespace

AvgEntropyReport avg_entropy_inequality_check(const Subshift& shift,
                                              const WordDistribution& nu, int alpha_len,
                                              int n, int l) {
  if (l < 1 || n < 2 * l) throw std::invalid_argument("need n >= 2l >= 2");
  if (nu.len < n + l + alpha_len - 2)
    throw std::invalid_argument("word distribution too short for the check");
  const double logM =
      std::log(static_cast<double>(word_count(shift, alpha_len).convert_to<double>()));

  AvgEntropyReport report;
  report.lhs = marginal_entropy(nu, 0, n + alpha_len - 1) / n;
  report.rhs_block = cesaro_entropy(nu, n, l + alpha_len - 1) / l;
  report.rhs_slack = 2.0 * l / n * logM;
  report.holds = report.lhs <= report.rhs_block + report.rhs_slack + 1e-9;
  return report;
}

ContinuityReport block_entropy_continuity_check(const Subshift& shift,
                                                const WordDistribution& nu, int alpha_len,
                                                int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (nu.len < n + alpha_len)
    throw std::invalid_argument("word distribution too short for the check");
  const double M = word_count(shift, alpha_len).convert_to<double>();

  ContinuityReport report;
  report.h_n = cesaro_entropy(nu, n, alpha_len);
  report.h_n1 = cesaro_entropy(nu, n + 1, alpha_len);
  report.bound = std::log(3.0 * M * M * (n + 1)) / (n + 1);
  report.holds = std::abs(report.h_n1 - report.h_n) <= report.bound + 1e-9;
  return report;
}

PartitionCover cover_from_partition(const ChainSystem& system, int level,
                                    const std::vector<std::vector<Word>>& classes,
                                    double delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  if (level < 0 || level >= system.depth()) throw std::invalid_argument("bad level");
  if (classes.empty()) throw std::invalid_argument("empty partition");
  const int L = static_cast<int>(classes.front().front().size());

  // The classes must partition the admissible length-L words.
  std::vector<Word> all = words(system.levels[static_cast<size_t>(level)], L);
  std::map<Word, int> seen;
  for (const auto& cls : classes)
    for (const Word& w : cls) {
      if (static_cast<int>(w.size()) != L)
        throw std::invalid_argument("partition class words of mixed length");
      if (++seen[w] > 1) throw std::invalid_argument("partition classes overlap");
    }
  for (const Word& w : all)
    if (!seen.count(w))
      throw std::invalid_argument("partition misses an admissible word");

  PartitionCover out;
  for (int i = 0; i < system.depth(); ++i) {
    if (i == level) {
      out.cover.levels.push_back(LevelCover{L, classes});
    } else {
      std::vector<Word> everything;
      for (int s = 0; s < system.levels[static_cast<size_t>(i)].symbol_count(); ++s)
        everything.push_back({s});
      out.cover.levels.push_back(LevelCover{1, {everything}});
    }
  }
  out.delta_independent = true;
  return out;
}

}  // namespace wpress
