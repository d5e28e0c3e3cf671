#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "wpress/fixtures.hpp"
#include "wpress/io.hpp"
#include "wpress/suites.hpp"
#include "wpress/variational.hpp"

namespace {

using wpress::io::json;

struct Options {
  std::string system_path;
  std::string potential_path;
  std::string measure_path;
  std::string out_path;
  std::string dump_measure_path;
  std::string mode = "single";
  std::string suite = "all";
  int n = 10;
  int N = 1;
  int n_max = 1;
  long depth = 0;
  double s = 0.0;
  int L = 2;
  int restarts = 8;
  int iterations = 500;
  std::uint64_t seed = 1;
  double step = 0.1;
  int sample = 0;
  int M = 2;
  std::vector<int> n_list;
};

wpress::ChainSystem require_system(const Options& opt) {
  if (opt.system_path.empty()) throw wpress::ConfigError("--system is required");
  return wpress::io::load_system(opt.system_path);
}

wpress::Potential optional_potential(const Options& opt, const wpress::ChainSystem& system) {
  if (opt.potential_path.empty()) return wpress::Potential::zero();
  return wpress::io::load_potential(opt.potential_path, system.levels[0]);
}

std::vector<std::string> referenced_files(const Options& opt) {
  std::vector<std::string> files;
  if (!opt.system_path.empty()) files.push_back(opt.system_path);
  if (!opt.potential_path.empty()) files.push_back(opt.potential_path);
  if (!opt.measure_path.empty()) files.push_back(opt.measure_path);
  return files;
}

json config_echo(const std::string& command, const Options& opt) {
  json cfg{{"command", command}};
  if (!opt.system_path.empty()) cfg["system"] = opt.system_path;
  if (!opt.potential_path.empty()) cfg["potential"] = opt.potential_path;
  if (!opt.measure_path.empty()) cfg["measure"] = opt.measure_path;
  if (command == "upper" || command == "smb") cfg["n"] = opt.n;
  if (command == "bisect") cfg["mode"] = opt.mode;
  if (command == "bisect" || command == "lp" || command == "frostman") {
    cfg["N"] = opt.N;
    cfg["n_max"] = opt.n_max;
    cfg["depth"] = opt.depth;
  }
  if (command == "lp" || command == "frostman") cfg["s"] = opt.s;
  if (command == "optimize") {
    cfg["L"] = opt.L;
    cfg["restarts"] = opt.restarts;
    cfg["iterations"] = opt.iterations;
    cfg["seed"] = opt.seed;
    cfg["step"] = opt.step;
  }
  if (command == "smb" && opt.sample > 0) {
    cfg["sample"] = opt.sample;
    cfg["seed"] = opt.seed;
  }
  if (command == "power-check") {
    cfg["M"] = opt.M;
    cfg["n_list"] = opt.n_list;
  }
  if (command == "verify") cfg["suite"] = opt.suite;
  return cfg;
}

json run_command(const std::string& command, const Options& opt, int& exit_code) {
  json values;
  json provenance = json::array();
  exit_code = 0;

  if (command == "upper") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    values["value"] = wpress::upper_pressure(system, f, opt.n);
    values["n"] = opt.n;
    provenance.push_back("single-scale");
  } else if (command == "bisect") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    wpress::StageSpec stage;
    wpress::BisectMode mode;
    if (opt.mode == "single") {
      mode = wpress::BisectMode::single_scale;
      stage = wpress::StageSpec::single(opt.n_max > 1 ? opt.n_max : opt.n);
    } else if (opt.mode == "lp") {
      mode = wpress::BisectMode::lp;
      stage = wpress::StageSpec{opt.N, opt.n_max, opt.depth};
    } else {
      throw wpress::ConfigError("--mode must be single or lp");
    }
    wpress::PressureBracket bracket = wpress::pressure_bisect(system, f, stage, mode);
    values["value"] = bracket.upper;
    values["stage"] = {{"N", stage.N}, {"n_max", stage.n_max}, {"depth", stage.depth}};
    provenance.push_back(bracket.upper_source);
  } else if (command == "lp") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    wpress::StageSpec stage{opt.N, opt.n_max, opt.depth};
    values["value"] = wpress::w_lp_stage(system, f, opt.s, stage);
    values["s"] = opt.s;
    values["stage"] = {{"N", stage.N}, {"n_max", stage.n_max}, {"depth", stage.depth}};
    provenance.push_back("lp");
  } else if (command == "frostman") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    wpress::StageSpec stage{opt.N, opt.n_max, opt.depth};
    wpress::FrostmanCertificate cert = wpress::frostman_lp(system, f, opt.s, stage);
    values["c"] = cert.c;
    values["no_mass_certifiable"] = cert.no_mass_certifiable;
    values["max_violation"] = cert.max_violation;
    values["gap"] = cert.no_mass_certifiable
                        ? 0.0
                        : wpress::duality_gap(system, f, opt.s, stage);
    double max_mass = 0, min_mass = 1;
    long support = 0;
    for (Eigen::Index i = 0; i < cert.measure.mass.size(); ++i) {
      double m = cert.measure.mass(i);
      if (m > 0) {
        ++support;
        max_mass = std::max(max_mass, m);
        min_mass = std::min(min_mass, m);
      }
    }
    values["measure_summary"] = {{"depth", cert.measure.depth},
                                 {"support", support},
                                 {"max_mass", max_mass},
                                 {"min_mass", support > 0 ? min_mass : 0.0}};
    if (!opt.dump_measure_path.empty()) {
      json dump = json::array();
      for (size_t i = 0; i < cert.measure.support.size(); ++i)
        dump.push_back({{"word", system.levels[0].alphabet().format(cert.measure.support[i])},
                        {"mass", cert.measure.mass(static_cast<Eigen::Index>(i))}});
      std::ofstream out(opt.dump_measure_path);
      if (!out) throw wpress::ConfigError("cannot write " + opt.dump_measure_path);
      out << json{{"depth", cert.measure.depth}, {"masses", dump}}.dump(2) << "\n";
    }
    provenance.push_back("lp");
  } else if (command == "optimize") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    wpress::OptimizeOptions oo{opt.restarts, opt.iterations, opt.seed, opt.step, opt.L};
    wpress::OptimizeResult res = wpress::optimize_markov(system, f, opt.L, oo);
    json rows = json::array();
    for (int u = 0; u < res.transition.rows(); ++u) {
      json row = json::array();
      for (int v = 0; v < res.transition.cols(); ++v) row.push_back(res.transition(u, v));
      rows.push_back(row);
    }
    values["transition"] = rows;
    values["value"] = {{"lower", res.value.lower},
                       {"upper", res.value.upper},
                       {"midpoint", res.value.midpoint()},
                       {"integral", res.value.integral_term}};
    values["grad_norm"] = res.grad_norm;
    values["best_restart"] = res.best_restart;
    provenance.push_back("optimizer");
  } else if (command == "smb") {
    wpress::ChainSystem system = require_system(opt);
    if (opt.measure_path.empty()) throw wpress::ConfigError("--measure is required");
    wpress::MarkovMeasure mu = wpress::io::load_measure(opt.measure_path, system.levels[0]);
    values["expected_rate"] = wpress::smb_expected_rate(system, mu, opt.n);
    values["n"] = opt.n;
    provenance.push_back("closed-form");
    if (opt.sample > 0) {
      wpress::SmbSampleStats stats = wpress::smb_sampled(system, mu, opt.n, opt.sample, opt.seed);
      values["sample"] = {{"mean", stats.sample_mean},
                          {"stddev", stats.sample_stddev},
                          {"sigma_mean", stats.sigma_mean},
                          {"orbits", stats.orbits},
                          {"within_3_sigma", stats.within_3_sigma}};
      provenance.push_back("sampled");
      if (!stats.within_3_sigma) exit_code = 1;
    }
  } else if (command == "power-check") {
    wpress::ChainSystem system = require_system(opt);
    wpress::Potential f = optional_potential(opt, system);
    std::vector<int> ns = opt.n_list.empty() ? std::vector<int>{2, 3} : opt.n_list;
    std::vector<int> ones(static_cast<size_t>(system.depth()), 1);
    wpress::CoverFamily cover = wpress::CoverFamily::cylinder_covers(system, ones);
    wpress::PowerRuleReport report = wpress::power_rule_check(system, f, cover, opt.M, ns);
    values["M"] = report.M;
    values["ok"] = report.ok;
    json joins = json::array();
    for (size_t j = 0; j < report.joins.size(); ++j) {
      json levels = json::array();
      for (const wpress::PowerJoinLevelReport& lvl : report.joins[j].levels)
        levels.push_back({{"level", lvl.level},
                          {"classes", lvl.rhs_classes.str()},
                          {"equal", lvl.equal}});
      joins.push_back({{"n", report.join_scales[j]}, {"levels", levels}});
    }
    values["joins"] = joins;
    json scales = json::array();
    for (const wpress::PowerRuleScaleReport& sc : report.scales)
      scales.push_back({{"n", sc.n},
                        {"base_estimate", sc.base_estimate},
                        {"power_estimate", sc.power_estimate},
                        {"slack", sc.slack},
                        {"within_slack", sc.within_slack}});
    values["scales"] = scales;
    provenance.push_back("single-scale");
    if (!report.ok) exit_code = 1;
  } else if (command == "verify") {
    std::vector<wpress::suites::CheckResult> results = wpress::suites::run_suite(opt.suite);
    json checks = json::array();
    bool all_ok = true;
    for (const wpress::suites::CheckResult& r : results) {
      checks.push_back({{"name", r.name}, {"ok", r.ok}, {"details", r.details},
                        {"seconds", r.seconds}});
      all_ok = all_ok && r.ok;
    }
    values["suite"] = opt.suite;
    values["checks"] = checks;
    values["ok"] = all_ok;
    provenance.push_back("closed-form");
    provenance.push_back("lp");
    provenance.push_back("single-scale");
    provenance.push_back("optimizer");
    provenance.push_back("sampled");
    if (!all_ok) exit_code = 1;
  } else {
    throw wpress::ConfigError("unknown command " + command);
  }

  json record;
  record["command"] = command;
  record["config"] = config_echo(command, opt);
  record["inputs_digest"] =
      wpress::io::digest(config_echo(command, opt).dump(), referenced_files(opt));
  record["values"] = values;
  record["provenance"] = provenance;
  return record;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted topological pressure for subshift chains"};
  app.require_subcommand(1);
  Options opt;

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", opt.system_path, "system file (JSON)");
  };
  auto add_potential = [&](CLI::App* cmd) {
    cmd->add_option("--potential", opt.potential_path,
                    "potential file (JSON); omitted means f = 0");
  };
  auto add_stage = [&](CLI::App* cmd) {
    cmd->add_option("--N", opt.N, "smallest scale");
    cmd->add_option("--n-max", opt.n_max, "largest scale");
    cmd->add_option("--depth", opt.depth, "resolution depth D");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "write the result record here");
  };

  CLI::App* upper = app.add_subcommand("upper", "single-scale upper pressure estimate");
  add_system(upper);
  add_potential(upper);
  upper->add_option("-n,--n", opt.n, "scale");
  add_out(upper);

  CLI::App* bisect = app.add_subcommand("bisect", "critical-exponent bisection");
  add_system(bisect);
  add_potential(bisect);
  bisect->add_option("--mode", opt.mode, "single or lp");
  bisect->add_option("-n,--n", opt.n, "scale for single mode");
  add_stage(bisect);
  add_out(bisect);

  CLI::App* lp = app.add_subcommand("lp", "fractional covering value at one s");
  add_system(lp);
  add_potential(lp);
  lp->add_option("--s", opt.s, "exponent s");
  add_stage(lp);
  add_out(lp);

  CLI::App* frostman = app.add_subcommand("frostman", "packing certificate at one s");
  add_system(frostman);
  add_potential(frostman);
  frostman->add_option("--s", opt.s, "exponent s");
  add_stage(frostman);
  frostman->add_option("--dump-measure", opt.dump_measure_path, "write the full measure");
  add_out(frostman);

  CLI::App* optimize = app.add_subcommand("optimize", "variational lower bound");
  add_system(optimize);
  add_potential(optimize);
  optimize->add_option("-L,--L", opt.L, "conditioning length");
  optimize->add_option("--restarts", opt.restarts, "ascent restarts");
  optimize->add_option("--iters", opt.iterations, "iterations per restart");
  optimize->add_option("--seed", opt.seed, "rng seed");
  optimize->add_option("--step", opt.step, "initial step size");
  add_out(optimize);

  CLI::App* smb = app.add_subcommand("smb", "weighted SMB rate");
  add_system(smb);
  smb->add_option("--measure", opt.measure_path, "Markov measure file (JSON)");
  smb->add_option("-N,--n", opt.n, "window scale");
  smb->add_option("--sample", opt.sample, "number of sampled orbits");
  smb->add_option("--seed", opt.seed, "rng seed");
  add_out(smb);

  CLI::App* power = app.add_subcommand("power-check", "power-rule identity and estimates");
  add_system(power);
  add_potential(power);
  power->add_option("-M,--M", opt.M, "power");
  power->add_option("--n-list", opt.n_list, "scales to test");
  add_out(power);

  CLI::App* verify = app.add_subcommand("verify", "run invariant suites on bundled systems");
  verify->add_option("--suite", opt.suite, "vp|smb|duality|power|all");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  int exit_code = 0;
  json record;
  auto start = std::chrono::steady_clock::now();
  try {
    record = run_command(command, opt, exit_code);
  } catch (const wpress::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const wpress::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 1;
  }
  record["timing_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (opt.out_path.empty()) {
    std::cout << record.dump(2) << "\n";
  } else {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "config error: cannot write " << opt.out_path << "\n";
      return 2;
    }
    out << record.dump(2) << "\n";
  }
  return exit_code;
}
