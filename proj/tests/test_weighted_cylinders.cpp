#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "wpress/fixtures.hpp"
#include "wpress/weighted_cylinders.hpp"

using namespace wpress;

TEST_CASE("window profiles use exact ceilings") {
  std::vector<Rational> w{Rational::parse("1"), Rational::parse("0.5")};
  WindowProfile p = window_profile(w, 3);
  CHECK(p.m == std::vector<long>{3, 5});
  CHECK(window_profile(w, 2).m == std::vector<long>{2, 3});

  std::vector<Rational> w3{Rational::parse("0.5"), Rational::parse("0.5"),
                           Rational::parse("1")};
  CHECK(window_profile(w3, 3).m == std::vector<long>{2, 3, 6});
  CHECK_THROWS_AS(window_profile(w, 0), std::invalid_argument);
}

TEST_CASE("window increments stay between floor and ceil of the weight sum") {
  for (const ChainSystem& system :
       {fixtures::fs42(), fixtures::gm_chain(), fixtures::hidden3()}) {
    Rational partial;
    for (int i = 0; i < system.depth(); ++i) {
      partial += system.weights[static_cast<size_t>(i)];
      for (int n = 1; n <= 12; ++n) {
        long diff = window_profile(system.weights, n + 1).m[i] -
                    window_profile(system.weights, n).m[i];
        CHECK(diff >= partial.floor_value());
        CHECK(diff <= partial.ceil_value());
      }
    }
  }
}

TEST_CASE("counting matches the spec examples") {
  ChainSystem fs = fixtures::fs42();
  CHECK(count_weighted_cylinders(fs, 1) == 8);
  CHECK(count_weighted_cylinders(fs, 2) == 32);

  // k = 1 reduces to plain word counting at the first window.
  ChainSystem gm = fixtures::gm1();
  for (int n = 1; n <= 6; ++n)
    CHECK(count_weighted_cylinders(gm, n) ==
          word_count(gm.levels[0], static_cast<int>(window_profile(gm.weights, n).m[0])));

  // Identity-code chain onto the full shift: free level-2 suffix.
  ChainSystem chain = fixtures::gm_chain();
  CHECK(count_weighted_cylinders(chain, 1) == 4);
}

TEST_CASE("count equals enumeration and brute force for n <= 5") {
  for (const ChainSystem& system :
       {fixtures::fs42(), fixtures::gm_chain(), fixtures::hidden3()}) {
    for (int n = 1; n <= 5; ++n) {
      auto cylinders = enumerate_weighted_cylinders(system, n);
      CHECK(BigInt(cylinders.size()) == count_weighted_cylinders(system, n));

      // Brute force: bucket admissible prefixes by key; every realized key
      // appears among the enumerated cylinders.
      CylinderWalk walk(system, n);
      std::set<Word> keys;
      for_each_word(system.levels[0], static_cast<int>(walk.total_len()),
                    [&](std::span<const int> w) { keys.insert(walk.key_of_prefix(w)); });
      std::set<Word> enumerated;
      for_each_weighted_cylinder(system, n, [&](std::span<const int> key) {
        enumerated.insert(Word(key.begin(), key.end()));
      });
      for (const Word& k : keys) CHECK(enumerated.count(k) == 1);
      CHECK(keys.size() <= enumerated.size());
    }
  }
}

TEST_CASE("every enumerated cylinder is valid and ordering is lexicographic") {
  ChainSystem fs = fixtures::fs42();
  auto cylinders = enumerate_weighted_cylinders(fs, 2);
  for (const WeightedCylinder& c : cylinders)
    CHECK(validate_cylinder(fs, c).empty());

  std::vector<Word> keys;
  for_each_weighted_cylinder(fs, 2, [&](std::span<const int> key) {
    keys.emplace_back(key.begin(), key.end());
  });
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("zero weights give empty suffixes, no special case") {
  ChainSystem degenerate = fixtures::fs42();
  degenerate.weights[1] = Rational(0, 1);
  CHECK(validate_chain(degenerate).ok);
  for (int n = 1; n <= 5; ++n) {
    WindowProfile p = window_profile(degenerate.weights, n);
    CHECK(p.m[0] == p.m[1]);
    CHECK(count_weighted_cylinders(degenerate, n) ==
          word_count(degenerate.levels[0], n));
    for (const WeightedCylinder& c : enumerate_weighted_cylinders(degenerate, n))
      CHECK(validate_cylinder(degenerate, c).empty());
  }
}

TEST_CASE("partition property: each admissible prefix lies in exactly one cylinder") {
  for (const ChainSystem& system :
       {fixtures::fs42(), fixtures::gm_chain(), fixtures::hidden3()}) {
    for (int n = 1; n <= 6; ++n) {
      CylinderWalk walk(system, n);
      std::map<Word, long> seen;
      for_each_weighted_cylinder(system, n, [&](std::span<const int> key) {
        ++seen[Word(key.begin(), key.end())];
      });
      for (const auto& [key, count] : seen) CHECK(count == 1);
      for_each_word(system.levels[0], static_cast<int>(walk.total_len()),
                    [&](std::span<const int> w) {
                      CHECK(seen.count(walk.key_of_prefix(w)) == 1);
                    });
    }
  }
}

TEST_CASE("cylinder validation rejects inconsistent tuples") {
  ChainSystem fs = fixtures::fs42();
  auto cylinders = enumerate_weighted_cylinders(fs, 2);
  WeightedCylinder broken = cylinders[0];
  // Flip the constrained prefix of the level-2 word away from the image.
  broken.level_words[1][0] = 1 - broken.level_words[1][0];
  CHECK(!validate_cylinder(fs, broken).empty());

  WeightedCylinder wrong_len = cylinders[0];
  wrong_len.level_words[0].pop_back();
  CHECK(!validate_cylinder(fs, wrong_len).empty());
}

TEST_CASE("weight_of examples") {
  ChainSystem fs = fixtures::fs42();
  Potential zero = fixtures::f_zero();
  Potential f1 = fixtures::f1();
  auto cylinders = enumerate_weighted_cylinders(fs, 2);

  for (const WeightedCylinder& c : cylinders) {
    CHECK(weight_of(fs, zero, c, 0.0) == 0.0);
    CHECK(weight_of(fs, zero, c, 1.0) == doctest::Approx(-2.0));
  }
  // Level-1 word "ab" gives S_2 f = log 2 at a_1 = 1.
  bool found = false;
  for (const WeightedCylinder& c : cylinders)
    if (c.level_words[0] == Word{0, 1}) {
      found = true;
      CHECK(weight_of(fs, f1, c, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
  CHECK(found);

  auto n3 = enumerate_weighted_cylinders(fs, 3);
  CHECK(weight_of(fs, zero, n3[0], 1.0) == doctest::Approx(-3.0));
}

TEST_CASE("join elements") {
  ChainSystem fs = fixtures::fs42();
  CoverFamily cover = CoverFamily::cylinder_covers(fs, {1, 1});

  Word prefix = fs.levels[0].alphabet().parse_word("abcd");
  JoinElement elem = join_element_of(fs, cover, 2, prefix);
  CHECK(elem.member_indices[0] == std::vector<int>{0, 1});      // "ab"
  CHECK(elem.member_indices[1] == std::vector<int>{0, 0, 1});   // "001"
  CHECK(elem.level_keys[0] == "ab");
  CHECK(elem.level_keys[1] == "001");

  // Trivial covers give the single element 0.
  JoinElement trivial = join_element_of(fs, CoverFamily::trivial(fs), 2, prefix);
  CHECK(trivial.flat_index == 0);

  // Overlapping cover: the first containing member wins.
  CoverFamily overlap = CoverFamily::cylinder_covers(fs, {1, 1});
  Alphabet bottom = fs.levels[1].alphabet();
  overlap.levels[1] = LevelCover{1, {{{0}, {1}}, {{1}}}};
  Word prefix_c = fs.levels[0].alphabet().parse_word("cccc");  // image "111"
  JoinElement first = join_element_of(fs, overlap, 2, prefix_c);
  CHECK(first.member_indices[1] == std::vector<int>{0, 0, 0});

  CHECK_THROWS_AS(join_element_of(fs, cover, 2, fs.levels[0].alphabet().parse_word("ab")),
                  std::invalid_argument);
}

TEST_CASE("refining a cover never decreases the join count") {
  ChainSystem fs = fixtures::fs42();
  // Element counts of the zeroth-position join for covers of lengths 1 vs 2.
  auto join_count = [&](int L2) {
    CoverFamily cover = CoverFamily::cylinder_covers(fs, {1, L2});
    std::set<std::string> elements;
    for (const Word& w : words(fs.levels[0], 4)) {
      JoinElement e = join_element_of(fs, cover, 1, w);
      elements.insert(e.flat_index.str());
    }
    return elements.size();
  };
  CHECK(join_count(2) >= join_count(1));
}

TEST_CASE("power join identity") {
  ChainSystem fs = fixtures::fs42();
  CoverFamily cover = CoverFamily::cylinder_covers(fs, {1, 1});
  PowerJoinReport r = power_join_identity_check(fs, cover, 2, 2);
  CHECK(r.equal);
  for (const PowerJoinLevelReport& lvl : r.levels) CHECK(lvl.lhs_classes == lvl.rhs_classes);

  // M = 1 is the identity.
  CHECK(power_join_identity_check(fs, cover, 1, 2).equal);

  ChainSystem gm = fixtures::gm_chain();
  CoverFamily gm_cover = CoverFamily::cylinder_covers(gm, {1, 1});
  CHECK(power_join_identity_check(gm, gm_cover, 3, 2).equal);
}
