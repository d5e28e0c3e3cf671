#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpress/fixtures.hpp"
#include "wpress/measures.hpp"

using namespace wpress;

TEST_CASE("stationary vectors") {
  ChainSystem gm = fixtures::gm1();
  MarkovMeasure m = fixtures::gm_markov(gm);
  CHECK(m.stationary()(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(m.stationary()(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  ChainSystem fs = fixtures::fs42();
  MarkovMeasure u = fixtures::uniform4(fs);
  for (int i = 0; i < 4; ++i) CHECK(u.stationary()(i) == doctest::Approx(0.25));

  // Reducible support is rejected.
  Eigen::MatrixXd P(2, 2);
  P << 1, 0, 0, 1;
  CHECK_THROWS_AS(MarkovMeasure(fixtures::fs2().levels[0], P), std::invalid_argument);

  // Mass on a forbidden transition is rejected.
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(MarkovMeasure(gm.levels[0], bad), std::invalid_argument);
}

TEST_CASE("entropy formulas") {
  ChainSystem gm = fixtures::gm1();
  CHECK(entropy(fixtures::gm_markov(gm)) ==
        doctest::Approx((2.0 / 3.0) * std::log(2.0)).epsilon(1e-12));

  ChainSystem fs = fixtures::fs42();
  CHECK(entropy(fixtures::uniform4(fs)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  // Deterministic cycle has zero entropy.
  Eigen::MatrixXd cycle(2, 2);
  cycle << 0, 1, 1, 0;
  CHECK(entropy(MarkovMeasure(fixtures::fs2().levels[0], cycle)) == doctest::Approx(0.0));
}

TEST_CASE("pushforward block distributions") {
  ChainSystem fs = fixtures::fs42();
  MarkovMeasure half = fixtures::bernoulli_half(fs);
  BlockDist d1 = pushforward_block_dist(fs, half, 1, 1);
  CHECK(d1.prob(0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d1.prob(1) == doctest::Approx(0.25).epsilon(1e-12));

  // Identity code: the marginal of the measure itself.
  ChainSystem gm = fixtures::gm_chain();
  MarkovMeasure gmm = fixtures::gm_markov(gm);
  BlockDist d2 = pushforward_block_dist(gm, gmm, 1, 2);
  // P(00) = pi_0 P_00, P(01) = pi_0 P_01, P(10) = pi_1 P_10, P(11) = 0.
  CHECK(d2.prob(0) == doctest::Approx(2.0 / 3.0 * 0.5).epsilon(1e-12));
  CHECK(d2.prob(1) == doctest::Approx(2.0 / 3.0 * 0.5).epsilon(1e-12));
  CHECK(d2.prob(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d2.prob(3) == doctest::Approx(0.0));

  // Uniform Bernoulli pushes to uniform on level-2 pairs.
  MarkovMeasure u = fixtures::uniform4(fs);
  BlockDist d3 = pushforward_block_dist(fs, u, 1, 2);
  for (int i = 0; i < 4; ++i) CHECK(d3.prob(i) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("hidden-Markov brackets") {
  // Identity code: both bounds equal the entropy at every L.
  ChainSystem gm = fixtures::gm_chain();
  MarkovMeasure gmm = fixtures::gm_markov(gm);
  const double h = entropy(gmm);
  for (int L = 1; L <= 5; ++L) {
    EntropyBracket b = hm_entropy_bracket(gm, gmm, 1, L);
    CHECK(b.lower == doctest::Approx(h).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(h).epsilon(1e-12));
  }

  // Bernoulli image on the full shift: H(3/4, 1/4) at L = 1.
  ChainSystem fs = fixtures::fs42();
  MarkovMeasure half = fixtures::bernoulli_half(fs);
  EntropyBracket b = hm_entropy_bracket(fs, half, 1, 1);
  const double expect = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(b.lower == doctest::Approx(expect).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(expect).epsilon(1e-12));

  // Genuinely hidden chain: a positive gap that shrinks by L = 6.
  ChainSystem h3 = fixtures::hidden3();
  MarkovMeasure h3m = fixtures::hidden3_markov(h3);
  EntropyBracket b1 = hm_entropy_bracket(h3, h3m, 1, 1);
  EntropyBracket b6 = hm_entropy_bracket(h3, h3m, 1, 6);
  CHECK(b1.width() > 1e-4);
  CHECK(b6.width() < b1.width());
  CHECK(b6.lower >= b1.lower - 1e-12);
  CHECK(b6.upper <= b1.upper + 1e-12);
}

TEST_CASE("integrals") {
  ChainSystem fs = fixtures::fs42();
  CHECK(integral(fs, fixtures::uniform4(fs), fixtures::f1()) ==
        doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-12));
  CHECK(integral(fs, fixtures::uniform4(fs), fixtures::f_zero()) == 0.0);
  CHECK(integral(fs, fixtures::bernoulli_half(fs), fixtures::f1()) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

  // Range-2 potential: mass of "01" under the golden-mean Markov measure.
  ChainSystem gm = fixtures::gm1();
  MarkovMeasure gmm = fixtures::gm_markov(gm);
  CHECK(integral(gm, gmm, fixtures::g01()) ==
        doctest::Approx(2.0 / 3.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("weighted cylinder masses") {
  ChainSystem fs = fixtures::fs42();
  MarkovMeasure u = fixtures::uniform4(fs);
  auto cylinders = enumerate_weighted_cylinders(fs, 2);
  double total = 0;
  for (const WeightedCylinder& c : cylinders) {
    double m = wcyl_mass(fs, u, c);
    CHECK(m == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
    total += m;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // Bernoulli factorization: level-1 "aa" with image suffix "0".
  MarkovMeasure half = fixtures::bernoulli_half(fs);
  for (const WeightedCylinder& c : cylinders)
    if (c.level_words[0] == Word{0, 0} && c.level_words[1][2] == 0)
      CHECK(wcyl_mass(fs, half, c) == doctest::Approx(0.25 * 0.75).epsilon(1e-12));

  // k = 1: mass of a plain cylinder is the Markov word probability.
  ChainSystem gm = fixtures::gm1();
  MarkovMeasure gmm = fixtures::gm_markov(gm);
  for (const WeightedCylinder& c : enumerate_weighted_cylinders(gm, 3)) {
    const Word& w = c.level_words[0];
    double expect = gmm.stationary()(w[0]);
    for (size_t t = 0; t + 1 < w.size(); ++t)
      expect *= gmm.transition()(w[t], w[t + 1]);
    CHECK(wcyl_mass(gm, gmm, c) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("smb expected rates") {
  ChainSystem fs = fixtures::fs42();
  MarkovMeasure half = fixtures::bernoulli_half(fs);
  const double h_p = 1.75 * std::log(2.0);
  const double h_q = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(smb_expected_rate(fs, half, 10) == doctest::Approx(h_p + 0.5 * h_q).epsilon(1e-12));
  // Frozen from the hand derivation 1.75 ln 2 + (ln 4 - 0.75 ln 3) / 2.
  CHECK(smb_expected_rate(fs, half, 10) ==
        doctest::Approx(1.4941751382893085).epsilon(1e-12));

  MarkovMeasure u = fixtures::uniform4(fs);
  CHECK(smb_expected_rate(fs, u, 10) ==
        doctest::Approx(std::log(4.0) + 0.5 * std::log(2.0)).epsilon(1e-12));

  // k = 1 golden-mean Markov chain approaches the entropy at rate C/N.
  ChainSystem gm = fixtures::gm1();
  MarkovMeasure gmm = fixtures::gm_markov(gm);
  double h = entropy(gmm);
  for (int N : {8, 16}) {
    double dev = std::abs(smb_expected_rate(gm, gmm, N) - h);
    CHECK(dev <= 2.0 * std::log(3.0) / N);
  }
}

TEST_CASE("smb sampling is deterministic and lands within 3 sigma") {
  ChainSystem fs = fixtures::fs42();
  MarkovMeasure half = fixtures::bernoulli_half(fs);
  SmbSampleStats s1 = smb_sampled(fs, half, 6, 400, 99);
  SmbSampleStats s2 = smb_sampled(fs, half, 6, 400, 99);
  CHECK(s1.sample_mean == s2.sample_mean);  // bitwise reproducible
  CHECK(s1.within_3_sigma);
}

TEST_CASE("averaging inequality examples") {
  ChainSystem fs2 = fixtures::fs2();
  // Point mass on a periodic word: left side 0.
  WordDistribution pm = point_mass_distribution(fs2.levels[0], {0, 1}, 8);
  AvgEntropyReport r1 = avg_entropy_inequality_check(fs2.levels[0], pm, 1, 6, 2);
  CHECK(r1.holds);
  CHECK(r1.lhs == doctest::Approx(0.0));

  ChainSystem gm = fixtures::gm1();
  WordDistribution un = uniform_word_distribution(gm.levels[0], 9);
  CHECK(avg_entropy_inequality_check(gm.levels[0], un, 1, 6, 3).holds);

  // Bernoulli marginal on the full shift: slack comparison at n = 8, l = 4.
  WordDistribution bern = uniform_word_distribution(fs2.levels[0], 12);
  AvgEntropyReport r3 = avg_entropy_inequality_check(fs2.levels[0], bern, 1, 8, 4);
  CHECK(r3.holds);
  CHECK(r3.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(r3.rhs_block == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(avg_entropy_inequality_check(fs2.levels[0], bern, 1, 4, 3),
                  std::invalid_argument);
}

TEST_CASE("block entropy continuity examples") {
  ChainSystem fs2 = fixtures::fs2();
  // Shift-invariant distribution: h(n+1) = h(n).
  WordDistribution un = uniform_word_distribution(fs2.levels[0], 8);
  ContinuityReport r = block_entropy_continuity_check(fs2.levels[0], un, 1, 4);
  CHECK(r.holds);
  CHECK(r.h_n == doctest::Approx(r.h_n1).epsilon(1e-12));

  WordDistribution pm = point_mass_distribution(fs2.levels[0], {0, 1, 1}, 6);
  CHECK(block_entropy_continuity_check(fs2.levels[0], pm, 1, 4).holds);

  for (int seed = 1; seed <= 20; ++seed) {
    WordDistribution nu = random_word_distribution(fs2.levels[0], 12, 1000 + seed);
    for (int n = 1; n <= 10; ++n)
      CHECK(block_entropy_continuity_check(fs2.levels[0], nu, 1, n).holds);
  }
}

TEST_CASE("cover from partition is the clopen identity") {
  ChainSystem gm = fixtures::gm1();
  std::vector<std::vector<Word>> classes;
  for (const Word& w : words(gm.levels[0], 1)) classes.push_back({w});
  PartitionCover pc = cover_from_partition(gm, 0, classes, 0.1);
  CHECK(pc.delta_independent);
  CHECK(pc.cover.validate(gm).empty());
  // Output does not depend on delta.
  PartitionCover pc2 = cover_from_partition(gm, 0, classes, 1e-9);
  CHECK(pc2.cover.levels[0].members == pc.cover.levels[0].members);

  // Length-2 classes work the same way.
  std::vector<std::vector<Word>> pairs;
  for (const Word& w : words(gm.levels[0], 2)) pairs.push_back({w});
  CHECK(cover_from_partition(gm, 0, pairs, 0.5).cover.validate(gm).empty());

  // Overlapping classes are rejected.
  std::vector<std::vector<Word>> overlap = classes;
  overlap.push_back(classes[0]);
  CHECK_THROWS_AS(cover_from_partition(gm, 0, overlap, 0.1), std::invalid_argument);
}
