#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "wpress/fixtures.hpp"
#include "wpress/symbolic.hpp"
#include "wpress/weighted_cylinders.hpp"

using namespace wpress;

namespace {

// Brute-force word enumeration used as the oracle for the transfer-matrix
// count: generate all strings and filter by adjacent admissibility.
long brute_force_count(const Subshift& shift, int n) {
  long total = 0;
  std::vector<int> w(static_cast<size_t>(n), 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) ok = shift.allows(w[static_cast<size_t>(i)], w[static_cast<size_t>(i + 1)]);
    if (ok) ++total;
    int pos = n - 1;
    while (pos >= 0 && ++w[static_cast<size_t>(pos)] == shift.symbol_count())
      w[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return total;
}

}  // namespace

TEST_CASE("alphabet invariants") {
  CHECK_THROWS_AS(Alphabet({}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
  Alphabet ab({"a", "b"});
  CHECK(ab.size() == 2);
  CHECK(ab.index_of("b") == 1);
  CHECK(!ab.index_of("z"));
  CHECK(ab.format(std::vector<int>{0, 1, 0}) == "aba");
  CHECK(ab.parse_word("ab") == Word{0, 1});
  CHECK_THROWS_AS(ab.parse_word("az"), std::invalid_argument);
}

TEST_CASE("validate_chain examples") {
  // FS-4/2 is valid.
  ChainSystem fs = fixtures::fs42();
  CHECK(validate_chain(fs).ok);

  // a1 = 0 is rejected with a named violation.
  ChainSystem bad = fixtures::fs42();
  bad.weights[0] = Rational(0, 1);
  ValidationReport report = validate_chain(bad);
  CHECK(!report.ok);
  bool found = false;
  for (const std::string& v : report.violations) found |= v.find("a1") != std::string::npos;
  CHECK(found);

  // Golden-mean to full shift by the identity map respects transitions.
  CHECK(validate_chain(fixtures::gm_chain()).ok);

  // A code image landing on a forbidden pair is caught.
  ChainSystem reversed;
  Alphabet binary({"0", "1"});
  reversed.levels.push_back(Subshift::full_shift(binary));
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> gm(2, 2);
  gm << true, true, true, false;
  reversed.levels.emplace_back(binary, gm);
  reversed.codes.emplace_back(binary, binary, std::vector<int>{0, 1});
  reversed.weights = {Rational(1, 1), Rational(1, 1)};
  CHECK(!validate_chain(reversed).ok);

  // Stranded symbols are reported.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> dead(2, 2);
  dead << true, false, true, false;  // symbol 1 has no outgoing row entries
  ChainSystem stranded;
  stranded.levels.emplace_back(binary, dead);
  stranded.weights = {Rational(1, 1)};
  CHECK(!validate_chain(stranded).ok);
}

TEST_CASE("word_count matches brute force and known values") {
  ChainSystem gm = fixtures::gm1();
  CHECK(word_count(gm.levels[0], 5) == 13);  // Fibonacci
  CHECK(word_count(gm.levels[0], 1) == 2);
  ChainSystem fs = fixtures::fs42();
  CHECK(word_count(fs.levels[0], 3) == 64);
  for (int n = 1; n <= 8; ++n) {
    CHECK(word_count(gm.levels[0], n) == brute_force_count(gm.levels[0], n));
    CHECK(BigInt(words(gm.levels[0], n).size()) == word_count(gm.levels[0], n));
  }
  CHECK_THROWS_AS(word_count(gm.levels[0], 0), std::invalid_argument);
}

TEST_CASE("words are lexicographic and cap-guarded") {
  ChainSystem gm = fixtures::gm1();
  std::vector<Word> two = words(gm.levels[0], 2);
  CHECK(two == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(words(gm.levels[0], 3).size() == 5);
  CHECK_THROWS_AS(words(fixtures::fs42().levels[0], 15, 1000), ResourceCapError);
  std::vector<Word> sorted = words(gm.levels[0], 6);
  CHECK(std::is_sorted(sorted.begin(), sorted.end()));
}

TEST_CASE("apply_code maps admissible words to admissible words") {
  ChainSystem fs = fixtures::fs42();
  const BlockCode& code = fs.codes[0];
  CHECK(fs.levels[0].alphabet().parse_word("abcd") == Word{0, 1, 2, 3});
  CHECK(code.apply(fs.levels[0].alphabet().parse_word("abcd")) ==
        fs.levels[1].alphabet().parse_word("0011"));
  CHECK(code.apply(fs.levels[0].alphabet().parse_word("aaaa")) ==
        fs.levels[1].alphabet().parse_word("0000"));

  ChainSystem h3 = fixtures::hidden3();
  for (int n = 1; n <= 6; ++n)
    for (const Word& w : words(h3.levels[0], n))
      CHECK(h3.levels[1].admissible(h3.codes[0].apply(w)));
}

TEST_CASE("birkhoff_sup examples") {
  ChainSystem fs = fixtures::fs42();
  Potential f1 = fixtures::f1();
  Word ab = fs.levels[0].alphabet().parse_word("ab");
  CHECK(birkhoff_sup(fs, f1, ab, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Potential zero = fixtures::f_zero();
  CHECK(birkhoff_sup(fs, zero, ab, 2) == 0.0);

  ChainSystem gm = fixtures::gm1();
  Potential g = fixtures::g01();
  Word zero_prefix = gm.levels[0].alphabet().parse_word("0");
  CHECK(birkhoff_sup(gm, g, zero_prefix, 1) == doctest::Approx(1.0));
  // From "1" the only extensions are "10": S_1 g = 0.
  Word one_prefix = gm.levels[0].alphabet().parse_word("1");
  CHECK(birkhoff_sup(gm, g, one_prefix, 1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(birkhoff_sup(gm, g, gm.levels[0].alphabet().parse_word("11"), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(birkhoff_sup(gm, g, zero_prefix, 2), std::invalid_argument);
}

TEST_CASE("range-1 birkhoff sums are plain sums") {
  ChainSystem fs = fixtures::fs42();
  Potential f1 = fixtures::f1();
  for (const Word& w : words(fs.levels[0], 4))
    for (long ell = 1; ell <= 4; ++ell) {
      double expect = 0;
      for (long t = 0; t < ell; ++t) expect += (w[static_cast<size_t>(t)] == 0 ? std::log(2.0) : 0.0);
      CHECK(birkhoff_sup(fs, f1, w, ell) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("enumeration length equals the exact count on every fixture, n <= 8") {
  for (const ChainSystem& system :
       {fixtures::fs42(), fixtures::gm_chain(), fixtures::gm1(), fixtures::hidden3(),
        fixtures::fs2()}) {
    for (const Subshift& shift : system.levels)
      for (int n = 1; n <= 8; ++n)
        CHECK(BigInt(words(shift, n).size()) == word_count(shift, n));
  }
}

TEST_CASE("codes preserve admissibility on every chain, n <= 6") {
  for (const ChainSystem& system :
       {fixtures::fs42(), fixtures::gm_chain(), fixtures::hidden3()}) {
    for (int n = 1; n <= 6; ++n)
      for (const Word& w : words(system.levels[0], n))
        CHECK(system.levels[1].admissible(system.codes[0].apply(w)));
  }
}

TEST_CASE("language is submultiplicative") {
  for (const ChainSystem& system :
       {fixtures::gm1(), fixtures::hidden3(), fixtures::fs42()}) {
    const Subshift& shift = system.levels[0];
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n)
        CHECK(word_count(shift, m + n) <= word_count(shift, m) * word_count(shift, n));
  }
}

TEST_CASE("oscillation examples") {
  ChainSystem fs = fixtures::fs42();
  Potential f1 = fixtures::f1();

  std::vector<int> ones(2, 1);
  CHECK(oscillation(fs, CoverFamily::cylinder_covers(fs, ones), f1) == doctest::Approx(0.0));
  CHECK(oscillation(fs, CoverFamily::trivial(fs), f1) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(oscillation(fs, CoverFamily::trivial(fs), fixtures::f_zero()) == 0.0);
}

TEST_CASE("oscillation is monotone under refinement") {
  ChainSystem gm = fixtures::gm1();
  Potential g = fixtures::g01();
  double coarse = oscillation(gm, CoverFamily::trivial(gm), g);
  double fine1 = oscillation(gm, CoverFamily::cylinder_covers(gm, {1}), g);
  double fine2 = oscillation(gm, CoverFamily::cylinder_covers(gm, {2}), g);
  CHECK(fine1 <= coarse + 1e-12);
  CHECK(fine2 <= fine1 + 1e-12);
}
