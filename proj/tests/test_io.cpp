#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpress/fixtures.hpp"
#include "wpress/io.hpp"

using namespace wpress;
using wpress::io::json;

TEST_CASE("system files parse to the programmatic fixtures") {
  json doc = json::parse(R"({
    "levels": [
      {"symbols": ["a", "b", "c", "d"]},
      {"symbols": ["0", "1"]}
    ],
    "codes": [{"a": "0", "b": "0", "c": "1", "d": "1"}],
    "weights": ["1", "0.5"]
  })");
  ChainSystem parsed = io::parse_system(doc);
  ChainSystem built = fixtures::fs42();
  CHECK(parsed.depth() == built.depth());
  CHECK(parsed.weights == built.weights);
  for (int i = 0; i < parsed.depth(); ++i) {
    CHECK(parsed.levels[i].alphabet() == built.levels[i].alphabet());
    CHECK(parsed.levels[i].transitions() == built.levels[i].transitions());
  }
  for (int s = 0; s < 4; ++s) CHECK(parsed.codes[0].apply(s) == built.codes[0].apply(s));
}

TEST_CASE("forbidden words produce transition matrices") {
  json doc = json::parse(R"({
    "levels": [{"symbols": ["0", "1"], "forbidden_words": ["11"]}],
    "weights": ["1"]
  })");
  ChainSystem parsed = io::parse_system(doc);
  CHECK(parsed.levels[0].allows(0, 1));
  CHECK(!parsed.levels[0].allows(1, 1));
}

TEST_CASE("parser rejects bad input precisely") {
  // Unknown field.
  CHECK_THROWS_WITH_AS(
      io::parse_system(json::parse(
          R"({"levels": [{"symbols": ["0"], "bogus": 1}], "weights": ["1"]})")),
      doctest::Contains("bogus"), ConfigError);

  // Non-exact weights.
  CHECK_THROWS_WITH_AS(
      io::parse_system(
          json::parse(R"({"levels": [{"symbols": ["0", "1"]}], "weights": [0.5]})")),
      doctest::Contains("exact"), ConfigError);

  // Weights may be integers.
  ChainSystem ok = io::parse_system(
      json::parse(R"({"levels": [{"symbols": ["0", "1"]}], "weights": [1]})"));
  CHECK(ok.weights[0] == Rational(1, 1));

  // Negative a1 is rejected with the invariant named.
  CHECK_THROWS_WITH_AS(
      io::parse_system(
          json::parse(R"({"levels": [{"symbols": ["0", "1"]}], "weights": ["-1"]})")),
      doctest::Contains("a1"), ConfigError);

  // Forbidden word of the wrong length.
  CHECK_THROWS_AS(io::parse_system(json::parse(
                      R"({"levels": [{"symbols": ["0", "1"], "forbidden_words": ["111"]}],
                          "weights": ["1"]})")),
                  ConfigError);

  // Code image violating target transitions.
  CHECK_THROWS_AS(io::parse_system(json::parse(R"({
      "levels": [
        {"symbols": ["0", "1"]},
        {"symbols": ["0", "1"], "forbidden_words": ["11"]}
      ],
      "codes": [{"0": "0", "1": "1"}],
      "weights": ["1", "1"]
    })")),
                  ConfigError);

  // Missing file.
  CHECK_THROWS_AS(io::load_system("/nonexistent/system.json"), ConfigError);
}

TEST_CASE("potential and measure files") {
  ChainSystem fs = fixtures::fs42();
  json fdoc = json::parse(R"({"range": 1, "entries": {"a": 0.6931471805599453}})");
  Potential f = io::parse_potential(fdoc, fs.levels[0]);
  CHECK(f.range() == 1);
  Word a{0};
  CHECK(f.value(a) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(
      io::parse_potential(json::parse(R"({"range": 1, "entries": {"z": 1.0}})"),
                          fs.levels[0]),
      doctest::Contains("unknown symbol"), ConfigError);

  ChainSystem gm = fixtures::gm1();
  CHECK_THROWS_AS(
      io::parse_potential(json::parse(R"({"range": 2, "entries": {"11": 1.0}})"),
                          gm.levels[0]),
      ConfigError);

  json mdoc = json::parse(R"({
    "labels": ["0", "1"],
    "transition": [[0.5, 0.5], [1.0, 0.0]]
  })");
  MarkovMeasure m = io::parse_measure(mdoc, gm.levels[0]);
  CHECK(m.stationary()(0) == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(io::parse_measure(json::parse(R"({
      "labels": ["0", "1"],
      "transition": [[0.5, 0.5], [0.5, 0.5]]
    })"),
                                    gm.levels[0]),
                  ConfigError);
}

TEST_CASE("measure labels permute rows onto alphabet order") {
  ChainSystem gm = fixtures::gm1();
  json mdoc = json::parse(R"({
    "labels": ["1", "0"],
    "transition": [[0.0, 1.0], [0.5, 0.5]]
  })");
  MarkovMeasure m = io::parse_measure(mdoc, gm.levels[0]);
  CHECK(m.transition()(0, 0) == doctest::Approx(0.5));
  CHECK(m.transition()(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("record round trip") {
  json record{{"command", "upper"},
              {"config", {{"n", 10}}},
              {"inputs_digest", "fnv1a:abc"},
              {"values", {{"value", 1.25}}},
              {"provenance", {"single-scale"}}};
  json reparsed = json::parse(record.dump());
  CHECK(reparsed == record);
  CHECK(json::parse(reparsed.dump(2)) == record);
}

TEST_CASE("cylinder serialization") {
  ChainSystem fs = fixtures::fs42();
  auto cylinders = enumerate_weighted_cylinders(fs, 2);
  json j = io::cylinder_to_json(fs, cylinders.front());
  CHECK(j.at("n") == 2);
  CHECK(j.at("words").size() == 2);
  CHECK(j.at("words")[0].get<std::string>().size() == 2);
  CHECK(j.at("words")[1].get<std::string>().size() == 3);
}

TEST_CASE("digest is stable and input-sensitive") {
  CHECK(io::fnv1a("abc") == io::fnv1a("abc"));
  CHECK(io::fnv1a("abc") != io::fnv1a("abd"));
}
