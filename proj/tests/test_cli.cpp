#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(WPRESS_BINARY) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), got);
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string data(const std::string& name) {
  return std::string(WPRESS_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("upper subcommand emits a structured record") {
  RunResult r = run("upper --system " + data("fs42.system.json") + " --potential " +
                    data("f1.potential.json") + " -n 10");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("command") == "upper");
  CHECK(record.at("values").at("value").get<double>() ==
        doctest::Approx(std::log(5.0) + 0.5 * std::log(2.0)).epsilon(1e-9));
  CHECK(record.at("provenance")[0] == "single-scale");
  CHECK(record.contains("inputs_digest"));
  CHECK(record.contains("timing_seconds"));
}

TEST_CASE("defaults fill a minimal upper invocation") {
  RunResult r = run("upper --system " + data("fs42.system.json"));
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("values").at("n") == 10);  // documented default
  CHECK(record.at("values").at("value").get<double>() ==
        doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("config errors exit 2") {
  CHECK(run("upper").exit_code == 2);  // missing --system
  CHECK(run("upper --system /nonexistent.json").exit_code == 2);
  CHECK(run("bisect --system " + data("fs42.system.json") +
            " --mode lp --N 3 --n-max 1 --depth 9")
            .exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("resource caps exit 3") {
  RunResult r = run("lp --system " + data("fs42.system.json") +
                    " --s 0 --N 1 --n-max 6 --depth 9");
  CHECK(r.exit_code == 3);
}

TEST_CASE("bisect and lp agree with the library values") {
  RunResult r = run("bisect --mode single --system " + data("fs42.system.json") +
                    " --potential " + data("f1.potential.json") + " -n 10");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("values").at("value").get<double>() ==
        doctest::Approx(std::log(5.0) + 0.5 * std::log(2.0)).epsilon(1e-8));

  RunResult lp = run("lp --system " + data("fs42.system.json") +
                     " --s 0 --N 1 --n-max 1 --depth 2");
  REQUIRE(lp.exit_code == 0);
  CHECK(json::parse(lp.output).at("values").at("value").get<double>() ==
        doctest::Approx(8.0).epsilon(1e-8));
}

TEST_CASE("frostman certificate record") {
  RunResult r = run("frostman --system " + data("fs42.system.json") +
                    " --s 0 --N 1 --n-max 1 --depth 2");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("values").at("c").get<double>() == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(record.at("values").at("gap").get<double>() <= 1e-8);
  CHECK(record.at("values").at("max_violation").get<double>() <= 1e-10);
  CHECK(!record.at("values").at("no_mass_certifiable").get<bool>());

  // Far above pressure: no mass certifiable, still exit 0.
  RunResult degenerate = run("frostman --system " + data("fs42.system.json") +
                             " --s 800 --N 1 --n-max 1 --depth 2");
  REQUIRE(degenerate.exit_code == 0);
  CHECK(json::parse(degenerate.output).at("values").at("no_mass_certifiable").get<bool>());
}

TEST_CASE("smb subcommand with sampling") {
  RunResult r = run("smb --system " + data("fs42.system.json") + " --measure " +
                    data("bernoulli_half.measure.json") + " -N 10 --sample 200 --seed 5");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  const double expect = 1.75 * std::log(2.0) +
                        0.5 * (std::log(4.0) - 0.75 * std::log(3.0));
  CHECK(record.at("values").at("expected_rate").get<double>() ==
        doctest::Approx(expect).epsilon(1e-9));
  CHECK(record.at("values").at("sample").at("within_3_sigma").get<bool>());
}

TEST_CASE("reproducibility: identical config gives identical records modulo timing") {
  const std::string args = "optimize --system " + data("fs42.system.json") +
                           " --potential " + data("f1.potential.json") +
                           " -L 2 --restarts 2 --iters 40 --seed 7";
  json a = json::parse(run(args).output);
  json b = json::parse(run(args).output);
  a.erase("timing_seconds");
  b.erase("timing_seconds");
  CHECK(a == b);
}

TEST_CASE("power-check subcommand") {
  RunResult r = run("power-check --system " + data("gm1.system.json") + " -M 2 --n-list 2 3");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("values").at("ok").get<bool>());
}

TEST_CASE("verify runs the smb suite") {
  RunResult r = run("verify --suite smb");
  REQUIRE(r.exit_code == 0);
  json record = json::parse(r.output);
  CHECK(record.at("values").at("ok").get<bool>());
  CHECK(record.at("values").at("checks").size() > 0);
}
