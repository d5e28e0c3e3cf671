#include "wpress/suites.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <cmath>
#include <sstream>

#include "wpress/fixtures.hpp"

namespace wpress::suites {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

CheckResult make_result(const std::string& name, bool ok, const std::string& details,
                        const Timer& timer) {
  return CheckResult{name, ok, details, timer.seconds()};
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

double xlogx(double p) { return p > 0 ? p * std::log(p) : 0.0; }

}  // namespace

double bernoulli_grid_search(const ChainSystem& system, const Potential& potential,
                             int coarse_steps, int refine_steps, double refine_radius) {
  if (system.depth() != 2) throw std::invalid_argument("grid search expects k = 2");
  if (potential.range() != 1) throw std::invalid_argument("grid search needs range 1");
  const int a = system.levels[0].symbol_count();
  const int b = system.levels[1].symbol_count();
  const double a1 = system.weights[0].to_double();
  const double a2 = system.weights[1].to_double();

  std::vector<double> f(static_cast<size_t>(a));
  for (int x = 0; x < a; ++x) {
    Word w{x};
    f[static_cast<size_t>(x)] = potential.value(w);
  }

  auto evaluate = [&](const std::vector<double>& p) {
    std::vector<double> q(static_cast<size_t>(b), 0.0);
    double h1 = 0, integ = 0;
    for (int x = 0; x < a; ++x) {
      h1 -= xlogx(p[static_cast<size_t>(x)]);
      integ += p[static_cast<size_t>(x)] * f[static_cast<size_t>(x)];
      q[static_cast<size_t>(system.codes[0].apply(x))] += p[static_cast<size_t>(x)];
    }
    double h2 = 0;
    for (double qq : q) h2 -= xlogx(qq);
    return a1 * h1 + a2 * h2 + integ;
  };

  // Coarse sweep of the simplex, then one refinement box around the argmax.
  std::vector<double> best_p(static_cast<size_t>(a), 1.0 / a);
  double best = evaluate(best_p);
  std::vector<int> idx(static_cast<size_t>(a - 1), 0);
  std::vector<double> p(static_cast<size_t>(a));
  const int S = coarse_steps;

  std::function<void(int, int)> sweep = [&](int pos, int remaining) {
    if (pos == a - 1) {
      p[static_cast<size_t>(pos)] = static_cast<double>(remaining) / S;
      double v = evaluate(p);
      if (v > best) {
        best = v;
        best_p = p;
      }
      return;
    }
    for (int i = 0; i <= remaining; ++i) {
      p[static_cast<size_t>(pos)] = static_cast<double>(i) / S;
      sweep(pos + 1, remaining - i);
    }
  };
  sweep(0, S);

  // Local box refinement on the first a-1 coordinates.
  std::vector<double> center = best_p;
  const double step = 2.0 * refine_radius / refine_steps;
  std::vector<int> box(static_cast<size_t>(a - 1), -refine_steps / 2);
  while (true) {
    double tail = 1.0;
    bool valid = true;
    for (int x = 0; x < a - 1 && valid; ++x) {
      p[static_cast<size_t>(x)] = center[static_cast<size_t>(x)] + box[static_cast<size_t>(x)] * step;
      valid = p[static_cast<size_t>(x)] >= 0;
      tail -= p[static_cast<size_t>(x)];
    }
    if (valid && tail >= 0) {
      p[static_cast<size_t>(a - 1)] = tail;
      double v = evaluate(p);
      if (v > best) best = v;
    }
    int pos = a - 2;
    while (pos >= 0 && ++box[static_cast<size_t>(pos)] > refine_steps / 2)
      box[static_cast<size_t>(pos--)] = -refine_steps / 2;
    if (pos < 0) break;
  }
  return best;
}

std::vector<CheckResult> weighted_entropy_full_shift() {
  std::vector<CheckResult> out;
  Timer timer;
  ChainSystem system = fixtures::fs42();
  Potential f = fixtures::f_zero();
  const double expected = 2.5 * std::log(2.0);

  {
    Timer t;
    // Brute-force oracle at n = 4: bucket level-1 windows by their key.
    CylinderWalk walk(system, 4);
    std::map<Word, long> buckets;
    for_each_word(system.levels[0], static_cast<int>(walk.total_len()),
                  [&](std::span<const int> w) { ++buckets[walk.key_of_prefix(w)]; });
    BigInt dp_count = count_weighted_cylinders(system, 4);
    bool ok = BigInt(buckets.size()) == dp_count;
    double brute_log_sum = std::log(static_cast<double>(buckets.size()));
    double dp_log_sum = single_scale_log_sum(system, f, 0.0, 4);
    ok = ok && std::abs(brute_log_sum - dp_log_sum) <= 1e-12;
    out.push_back(make_result(
        "brute-force weighted-cylinder oracle at n=4",
        ok, "buckets=" + std::to_string(buckets.size()) + " dp=" + dp_count.str(), t));
  }

  double closed = fullshift_closed_form(system, f);
  {
    Timer t;
    double grid = bernoulli_grid_search(system, f);
    bool ok = std::abs(grid - closed) <= 5e-4 && grid <= closed + 1e-9;
    out.push_back(make_result("closed form vs Bernoulli grid search", ok,
                              "grid=" + fmt(grid) + " closed=" + fmt(closed), t));
  }

  double upper = upper_pressure(system, f, 10);
  OptimizeResult opt = optimize_markov(system, f, 2, OptimizeOptions{8, 500, 7, 0.1, 2});
  {
    Timer t;
    bool ok = std::abs(upper - expected) <= 1e-9 && std::abs(closed - expected) <= 1e-9 &&
              std::abs(upper - closed) <= 1e-9;
    out.push_back(make_result("upper_pressure(10) and closed form at 2.5 log 2", ok,
                              "upper=" + fmt(upper) + " closed=" + fmt(closed), t));
  }
  {
    Timer t;
    bool ok = std::abs(opt.value.midpoint() - expected) <= 1e-3;
    out.push_back(make_result("optimizer reaches 2.5 log 2 within 1e-3", ok,
                              "optimizer=" + fmt(opt.value.midpoint()), t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> pressure_with_potential_gap() {
  std::vector<CheckResult> out;
  Timer timer;
  ChainSystem system = fixtures::fs42();
  Potential f = fixtures::f1();
  const double closed = fullshift_closed_form(system, f);
  const double expected_upper = std::log(5.0) + 0.5 * std::log(2.0);

  {
    Timer t;
    double grid = bernoulli_grid_search(system, f);
    bool ok = std::abs(grid - closed) <= 5e-4 && grid <= closed + 1e-9;
    out.push_back(make_result("closed form vs Bernoulli grid search", ok,
                              "grid=" + fmt(grid) + " closed=" + fmt(closed), t));
  }

  StageSpec stage = StageSpec::single(10);
  VPReport report = vp_report(system, f, stage, 2, OptimizeOptions{8, 500, 7, 0.1, 2});
  {
    Timer t;
    bool ok = std::abs(report.optimizer_value.midpoint() - closed) <= 1e-3;
    out.push_back(make_result("optimizer reaches the closed form within 1e-3", ok,
                              "optimizer=" + fmt(report.optimizer_value.midpoint()) +
                                  " closed=" + fmt(closed), t));
  }
  {
    Timer t;
    bool ok = std::abs(report.stage_upper - expected_upper) <= 1e-9;
    out.push_back(make_result("single-scale upper equals log 5 + 0.5 log 2", ok,
                              "upper=" + fmt(report.stage_upper), t));
  }
  {
    Timer t;
    const double gap = report.stage_upper - report.optimizer_value.midpoint();
    bool ok = report.optimizer_value.midpoint() <= report.stage_upper + 1e-9 &&
              std::abs(gap - 6.84e-3) <= 2e-3;
    out.push_back(make_result("finite-stage gap near 6.84e-3 with optimizer <= upper",
                              ok, "gap=" + fmt(gap), t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> lp_strong_duality() {
  std::vector<CheckResult> out;
  Timer timer;

  struct Case {
    std::string name;
    ChainSystem system;
    Potential potential;
    StageSpec stage;
  };
  std::vector<Case> cases;
  cases.push_back({"fs42 N=1..2 D=3", fixtures::fs42(), fixtures::f1(), StageSpec{1, 2, 3}});
  cases.push_back({"fs42 N=1..3 D=5", fixtures::fs42(), fixtures::f_zero(), StageSpec{1, 3, 5}});
  cases.push_back({"gm-chain N=1..2 D=4", fixtures::gm_chain(), fixtures::f_zero(),
                   StageSpec{1, 2, 4}});
  cases.push_back({"gm-chain N=1..3 D=6", fixtures::gm_chain(), fixtures::g01(),
                   StageSpec{1, 3, 6}});

  for (const Case& c : cases) {
    for (double s : {0.0, 1.0, 1.9}) {
      Timer t;
      double primal = w_lp_stage(c.system, c.potential, s, c.stage);
      FrostmanCertificate cert = frostman_lp(c.system, c.potential, s, c.stage);
      double gap = std::abs(primal - cert.c);
      double viol = cert.no_mass_certifiable
                        ? 0.0
                        : verify_frostman(c.system, c.potential, cert, s, c.stage);
      bool ok = gap <= 1e-8 * std::max(1.0, primal) && viol <= 1e-10;
      out.push_back(make_result(c.name + " s=" + fmt(s), ok,
                                "primal=" + fmt(primal) + " dual=" + fmt(cert.c) +
                                    " gap=" + fmt(gap) + " violation=" + fmt(viol),
                                t));
    }
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> power_rule() {
  std::vector<CheckResult> out;
  Timer timer;

  struct Case {
    std::string name;
    ChainSystem system;
    Potential potential;
  };
  std::vector<Case> cases;
  cases.push_back({"fs42", fixtures::fs42(), fixtures::f1()});
  cases.push_back({"gm-chain", fixtures::gm_chain(), fixtures::f_zero()});
  cases.push_back({"gm1", fixtures::gm1(), fixtures::g01()});
  cases.push_back({"hidden3", fixtures::hidden3(), fixtures::f_zero()});

  for (const Case& c : cases) {
    std::vector<int> ones(static_cast<size_t>(c.system.depth()), 1);
    CoverFamily cover = CoverFamily::cylinder_covers(c.system, ones);
    for (int M : {2, 3}) {
      Timer t;
      PowerRuleReport rule = power_rule_check(c.system, c.potential, cover, M, {6},
                                              {1, 2, 3, 4}, 20'000'000);
      bool ok = rule.ok;
      std::string details = "estimate=" + fmt(rule.scales[0].base_estimate) +
                            " power/M=" + fmt(rule.scales[0].power_estimate) +
                            " slack=" + fmt(rule.scales[0].slack);
      out.push_back(make_result(c.name + " M=" + std::to_string(M), ok, details, t));
    }
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> weighted_smb() {
  std::vector<CheckResult> out;
  Timer timer;
  ChainSystem system = fixtures::fs42();
  MarkovMeasure mu = fixtures::bernoulli_half(system);

  const double ln2 = std::log(2.0);
  const double h_p = 1.75 * ln2;
  const double h_q = std::log(4.0) - 0.75 * std::log(3.0);
  const double limit = h_p + 0.5 * h_q;

  {
    Timer t;
    double rate = smb_expected_rate(system, mu, 10);
    bool ok = std::abs(rate - limit) <= 1e-9;
    out.push_back(make_result("even-N exact rate at N=10", ok,
                              "rate=" + fmt(rate) + " limit=" + fmt(limit), t));
  }
  {
    Timer t;
    // Cross-check of the two computation routes at a small even N.
    double fast = smb_expected_rate(system, mu, 4);
    CylinderWalk walk(system, 4);
    double enumerated = 0;
    for_each_weighted_cylinder(system, 4, [&](std::span<const int> key) {
      double m = wcyl_mass(system, mu, walk.cylinder_from_key(key));
      enumerated -= xlogx(m);
    });
    enumerated /= 4;
    bool ok = std::abs(fast - enumerated) <= 1e-10;
    out.push_back(make_result("window-decomposed route equals enumeration route", ok,
                              "fast=" + fmt(fast) + " enumerated=" + fmt(enumerated), t));
  }
  {
    Timer t;
    bool ok = true;
    std::string details;
    for (int N : {9, 11}) {
      double rate = smb_expected_rate(system, mu, N);
      WindowProfile profile = window_profile(system.weights, N);
      // Ceiling slack: window excess times the per-symbol entropy ceiling.
      double bound = 0;
      long prev = 0;
      for (int i = 0; i < system.depth(); ++i) {
        double expected_len = system.weights[static_cast<size_t>(i)].to_double() * N;
        double excess = static_cast<double>(profile.m[i] - prev) - expected_len;
        bound += std::max(0.0, excess) *
                 std::log(static_cast<double>(
                     system.levels[static_cast<size_t>(i)].symbol_count())) /
                 N;
        prev = profile.m[i];
      }
      ok = ok && std::abs(rate - limit) <= bound + 1e-12;
      details += "N=" + std::to_string(N) + " dev=" + fmt(std::abs(rate - limit)) +
                 " bound=" + fmt(bound) + " ";
    }
    out.push_back(make_result("odd-N deviation within ceiling slack", ok, details, t));
  }
  {
    Timer t;
    SmbSampleStats stats = smb_sampled(system, mu, 10, 1000, 20257);
    out.push_back(make_result("1000 sampled orbit rates within 3 sigma",
                              stats.within_3_sigma,
                              "mean=" + fmt(stats.sample_mean) + " expected=" +
                                  fmt(stats.expected_rate) + " sigma_mean=" +
                                  fmt(stats.sigma_mean), t));
  }
  {
    Timer t;
    ChainSystem gm = fixtures::gm1();
    MarkovMeasure m = fixtures::gm_markov(gm);
    double rate = smb_expected_rate(gm, m, 16);
    double h = entropy(m);
    double slack = 2.0 * std::abs(std::log(1.0 / 3.0)) / 16.0;
    bool ok = std::abs(rate - h) <= slack;
    out.push_back(make_result("k=1 Markov rate near entropy", ok,
                              "rate=" + fmt(rate) + " entropy=" + fmt(h) +
                                  " slack=" + fmt(slack), t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> lower_bound_theorem() {
  std::vector<CheckResult> out;
  Timer timer;

  struct Case {
    std::string name;
    ChainSystem system;
    Potential potential;
  };
  std::vector<Case> cases;
  cases.push_back({"fs42/f1", fixtures::fs42(), fixtures::f1()});
  cases.push_back({"fs42/f0", fixtures::fs42(), fixtures::f_zero()});
  cases.push_back({"gm-chain/f0", fixtures::gm_chain(), fixtures::f_zero()});
  cases.push_back({"gm1/g01", fixtures::gm1(), fixtures::g01()});
  cases.push_back({"hidden3/f0", fixtures::hidden3(), fixtures::f_zero()});

  for (const Case& c : cases) {
    Timer t;
    int violations = 0;
    std::string first;
    std::vector<int> ones(static_cast<size_t>(c.system.depth()), 1);
    for (int seed = 1; seed <= 20; ++seed) {
      MarkovMeasure mu = fixtures::random_markov(c.system.levels[0],
                                                 1000ull * seed + 17ull);
      LowerBoundReport report = lower_bound_check(c.system, c.potential, mu, ones, 8, 3);
      if (!report.holds) {
        ++violations;
        if (first.empty())
          first = "seed " + std::to_string(seed) + ": upper=" + fmt(report.stage_upper) +
                  " objective=" + fmt(report.objective.lower) +
                  " eps=" + fmt(report.epsilon_total);
      }
    }
    out.push_back(make_result(c.name + " 20 seeded measures", violations == 0,
                              violations == 0 ? "no violations" : first, t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> entropy_lemmas() {
  std::vector<CheckResult> out;
  Timer timer;

  {
    Timer t;
    int failures = 0;
    ChainSystem gm = fixtures::gm1();
    ChainSystem fs = fixtures::fs2();
    for (int seed = 1; seed <= 50; ++seed) {
      WordDistribution nu = random_word_distribution(gm.levels[0], 13, 77ull * seed);
      AvgEntropyReport r1 = avg_entropy_inequality_check(gm.levels[0], nu, 1, 8, 4);
      AvgEntropyReport r2 = avg_entropy_inequality_check(gm.levels[0], nu, 2, 8, 4);
      if (!r1.holds || !r2.holds) ++failures;
    }
    for (int seed = 1; seed <= 50; ++seed) {
      WordDistribution nu = random_word_distribution(fs.levels[0], 15, 31ull * seed);
      AvgEntropyReport r1 = avg_entropy_inequality_check(fs.levels[0], nu, 1, 10, 5);
      AvgEntropyReport r2 = avg_entropy_inequality_check(fs.levels[0], nu, 1, 6, 3);
      if (!r1.holds || !r2.holds) ++failures;
    }
    // Named edge cases: point mass on a periodic word and the uniform measure.
    {
      WordDistribution pm = point_mass_distribution(fs.levels[0], {0, 1}, 10);
      if (!avg_entropy_inequality_check(fs.levels[0], pm, 1, 6, 2).holds) ++failures;
      WordDistribution un = uniform_word_distribution(gm.levels[0], 10);
      if (!avg_entropy_inequality_check(gm.levels[0], un, 1, 6, 3).holds) ++failures;
    }
    out.push_back(make_result("averaging inequality on 100 seeded measures",
                              failures == 0, std::to_string(failures) + " failures", t));
  }
  {
    Timer t;
    int failures = 0;
    ChainSystem gm = fixtures::gm1();
    ChainSystem fs = fixtures::fs2();
    for (int seed = 1; seed <= 50; ++seed) {
      WordDistribution nu = random_word_distribution(gm.levels[0], 12, 911ull * seed);
      for (int n = 1; n <= 10; ++n)
        if (!block_entropy_continuity_check(gm.levels[0], nu, 1, n).holds) ++failures;
    }
    for (int seed = 1; seed <= 50; ++seed) {
      WordDistribution nu = random_word_distribution(fs.levels[0], 12, 313ull * seed);
      for (int n = 1; n <= 10; ++n)
        if (!block_entropy_continuity_check(fs.levels[0], nu, 1, n).holds) ++failures;
    }
    {
      WordDistribution pm = point_mass_distribution(fs.levels[0], {0, 1, 1}, 6);
      if (!block_entropy_continuity_check(fs.levels[0], pm, 1, 4).holds) ++failures;
    }
    out.push_back(make_result("block-entropy continuity on 100 seeded measures",
                              failures == 0, std::to_string(failures) + " failures", t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> numerical_hygiene() {
  std::vector<CheckResult> out;
  Timer timer;

  {
    Timer t;
    bool ok = true;
    std::string details;
    struct Case {
      ChainSystem system;
      Potential potential;
      std::uint64_t seed;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::fs42(), fixtures::f1(), 5});
    cases.push_back({fixtures::gm1(), fixtures::g01(), 7});
    cases.push_back({fixtures::hidden3(), fixtures::f_zero(), 9});
    for (const Case& c : cases) {
      MarkovParameterization param(c.system.levels[0]);
      std::mt19937_64 rng(c.seed);
      Eigen::VectorXd theta(param.parameter_count());
      for (int e = 0; e < theta.size(); ++e)
        theta(e) = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
      const double a1 = c.system.weights[0].to_double();
      Eigen::VectorXd grad =
          entropy_integral_gradient(c.system, c.potential, param, theta, a1);
      const double h = 1e-5;
      double worst = 0;
      for (int e = 0; e < theta.size(); ++e) {
        Eigen::VectorXd probe = theta;
        probe(e) = theta(e) + h;
        double up = entropy_integral_value(c.system, c.potential, param, probe, a1);
        probe(e) = theta(e) - h;
        double dn = entropy_integral_value(c.system, c.potential, param, probe, a1);
        double fd = (up - dn) / (2 * h);
        double rel = std::abs(fd - grad(e)) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, rel);
      }
      ok = ok && worst <= 1e-6;
      details += fmt(worst) + " ";
    }
    out.push_back(make_result("analytic gradient matches central differences", ok,
                              "worst rel err: " + details, t));
  }
  {
    Timer t;
    bool ok = true;
    std::string details;
    struct Case {
      ChainSystem system;
      MarkovMeasure measure;
    };
    std::vector<Case> cases;
    {
      ChainSystem s = fixtures::fs42();
      MarkovMeasure m = fixtures::bernoulli_half(s);
      cases.push_back({std::move(s), std::move(m)});
    }
    {
      ChainSystem s = fixtures::gm_chain();
      MarkovMeasure m = fixtures::gm_markov(s);
      cases.push_back({std::move(s), std::move(m)});
    }
    {
      ChainSystem s = fixtures::hidden3();
      MarkovMeasure m = fixtures::hidden3_markov(s);
      cases.push_back({std::move(s), std::move(m)});
    }
    for (const Case& c : cases) {
      for (int n = 1; n <= 6; ++n) {
        CylinderWalk walk(c.system, n);
        double total = 0;
        for_each_weighted_cylinder(c.system, n, [&](std::span<const int> key) {
          total += wcyl_mass(c.system, c.measure, walk.cylinder_from_key(key));
        });
        ok = ok && std::abs(total - 1.0) <= 1e-10;
        if (n == 6) details += fmt(std::abs(total - 1.0)) + " ";
      }
    }
    out.push_back(make_result("weighted-cylinder masses sum to 1 (n <= 6)", ok,
                              "deviation at n=6: " + details, t));
  }
  {
    Timer t;
    bool ok = true;
    std::string details;
    // Identity code: bracket collapses at every L.
    ChainSystem gm = fixtures::gm_chain();
    MarkovMeasure gmm = fixtures::gm_markov(gm);
    for (int L = 1; L <= 6; ++L) {
      EntropyBracket b = hm_entropy_bracket(gm, gmm, 1, L);
      ok = ok && b.width() <= 1e-12;
    }
    // Bernoulli on a full shift: pushforward is Bernoulli, bracket collapses.
    ChainSystem fs = fixtures::fs42();
    MarkovMeasure bern = fixtures::bernoulli_half(fs);
    for (int L = 1; L <= 6; ++L) {
      EntropyBracket b = hm_entropy_bracket(fs, bern, 1, L);
      ok = ok && b.width() <= 1e-12;
    }
    // Genuinely hidden chain: monotone bracket, positive gap shrinking in L.
    ChainSystem h3 = fixtures::hidden3();
    MarkovMeasure h3m = fixtures::hidden3_markov(h3);
    EntropyBracket prev = hm_entropy_bracket(h3, h3m, 1, 1);
    ok = ok && prev.width() > 0;
    for (int L = 2; L <= 6; ++L) {
      EntropyBracket b = hm_entropy_bracket(h3, h3m, 1, L);
      ok = ok && b.upper <= prev.upper + 1e-12 && b.lower >= prev.lower - 1e-12;
      prev = b;
    }
    details = "hidden3 gap L=1: " + fmt(hm_entropy_bracket(h3, h3m, 1, 1).width()) +
              " L=6: " + fmt(prev.width());
    ok = ok && prev.width() < hm_entropy_bracket(h3, h3m, 1, 1).width();
    out.push_back(make_result("hidden-Markov brackets monotone and collapsing", ok,
                              details, t));
  }
  out.push_back(make_result("criterion runtime", true, fmt(timer.seconds()) + "s", timer));
  return out;
}

std::vector<CheckResult> run_suite(const std::string& name) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> block, const std::string& label) {
    for (CheckResult& r : block) {
      r.name = label + ": " + r.name;
      out.push_back(std::move(r));
    }
  };
  if (name == "vp" || name == "all") {
    append(weighted_entropy_full_shift(), "weighted-entropy");
    append(pressure_with_potential_gap(), "pressure-gap");
    append(lower_bound_theorem(), "lower-bound");
  }
  if (name == "duality" || name == "all") append(lp_strong_duality(), "duality");
  if (name == "power" || name == "all") append(power_rule(), "power");
  if (name == "smb" || name == "all") append(weighted_smb(), "smb");
  if (name == "all") {
    append(entropy_lemmas(), "lemmas");
    append(numerical_hygiene(), "hygiene");
  }
  if (out.empty()) throw ConfigError("unknown suite: " + name);
  return out;
}

}  // namespace wpress::suites
