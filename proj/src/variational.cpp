#include "wpress/variational.hpp"

#include <cmath>
#include <random>

namespace wpress {

ObjectiveValue objective(const ChainSystem& system, const Potential& potential,
                         const MarkovMeasure& markov, int L) {
  if (L < 1) throw std::invalid_argument("conditioning length must be >= 1");
  ObjectiveValue out;
  const double a1 = system.weights[0].to_double();
  out.level1_term = a1 * entropy(markov);
  out.integral_term = integral(system, markov, potential);
  out.lower = out.level1_term + out.integral_term;
  out.upper = out.lower;
  for (int i = 1; i < system.depth(); ++i) {
    EntropyBracket bracket = hm_entropy_bracket(system, markov, i, L);
    const double ai = system.weights[static_cast<size_t>(i)].to_double();
    out.lower += ai * bracket.lower;
    out.upper += ai * bracket.upper;
    out.level_terms.push_back(bracket);
  }
  return out;
}

double fullshift_closed_form(const ChainSystem& system, const Potential& potential) {
  for (const Subshift& shift : system.levels)
    for (int u = 0; u < shift.symbol_count(); ++u)
      for (int v = 0; v < shift.symbol_count(); ++v)
        if (!shift.allows(u, v))
          throw std::invalid_argument("closed form needs full shifts on every level");
  if (potential.range() != 1)
    throw std::invalid_argument("closed form needs a range-1 potential");

  const double a1 = system.weights[0].to_double();
  std::vector<double> phi(static_cast<size_t>(system.levels[0].symbol_count()));
  for (int x = 0; x < system.levels[0].symbol_count(); ++x) {
    Word w{x};
    phi[static_cast<size_t>(x)] = std::exp(potential.value(w) / a1);
  }

  double cum = a1;
  for (int i = 1; i < system.depth(); ++i) {
    const double ai = system.weights[static_cast<size_t>(i)].to_double();
    const BlockCode& code = system.codes[static_cast<size_t>(i - 1)];
    std::vector<double> fiber(static_cast<size_t>(system.levels[static_cast<size_t>(i)].symbol_count()), 0.0);
    for (size_t x = 0; x < phi.size(); ++x)
      fiber[static_cast<size_t>(code.apply(static_cast<int>(x)))] += phi[x];
    const double expo = cum / (cum + ai);
    for (double& z : fiber) z = std::pow(z, expo);
    phi = std::move(fiber);
    cum += ai;
  }
  double total = 0;
  for (double z : phi) total += z;
  return cum * std::log(total);
}

MarkovParameterization::MarkovParameterization(const Subshift& shift)
    : states_(shift.symbol_count()) {
  for (int u = 0; u < states_; ++u)
    for (int v = 0; v < states_; ++v)
      if (shift.allows(u, v)) edges_.emplace_back(u, v);
}

Eigen::MatrixXd MarkovParameterization::transition(const Eigen::VectorXd& theta) const {
  if (theta.size() != parameter_count())
    throw std::invalid_argument("parameter vector of wrong size");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(states_, states_);
  for (int e = 0; e < parameter_count(); ++e)
    P(edges_[static_cast<size_t>(e)].first, edges_[static_cast<size_t>(e)].second) =
        std::exp(theta(e));
  for (int u = 0; u < states_; ++u) {
    double row = P.row(u).sum();
    if (row <= 0) throw std::invalid_argument("row without allowed transitions");
    P.row(u) /= row;
  }
  return P;
}

namespace {

// d(entropy_weight * h + integral)/dP as a dense matrix, including the
// stationary-vector response through the fundamental matrix.
Eigen::MatrixXd objective_p_gradient(const Potential& potential,
                                     const MarkovMeasure& markov,
                                     double entropy_weight) {
  const Eigen::MatrixXd& P = markov.transition();
  const Eigen::VectorXd& pi = markov.stationary();
  const int k = markov.states();

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd g_pi = Eigen::VectorXd::Zero(k);

  for (int u = 0; u < k; ++u) {
    double row_entropy = 0;
    for (int v = 0; v < k; ++v) {
      const double p = P(u, v);
      if (p > 0) {
        G(u, v) += entropy_weight * (-pi(u) * (1.0 + std::log(p)));
        row_entropy -= p * std::log(p);
      }
    }
    g_pi(u) += entropy_weight * row_entropy;
  }

  for (const auto& [w, value] : potential.table()) {
    double mass = pi(w[0]);
    for (size_t t = 0; t + 1 < w.size(); ++t) mass *= P(w[t], w[t + 1]);
    if (mass <= 0) continue;
    g_pi(w[0]) += value * mass / pi(w[0]);
    for (size_t t = 0; t + 1 < w.size(); ++t)
      G(w[t], w[t + 1]) += value * mass / P(w[t], w[t + 1]);
  }

  // dpi = pi dP Z with Z = (I - P + 1 pi^T)^{-1}.
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(k, k) - P +
                      Eigen::MatrixXd::Ones(k, 1) * pi.transpose();
  Eigen::VectorXd zg = B.fullPivLu().solve(g_pi);  // Z * g_pi
  G += pi * zg.transpose();
  return G;
}

}  // namespace

double entropy_integral_value(const ChainSystem& system, const Potential& potential,
                              const MarkovParameterization& param,
                              const Eigen::VectorXd& theta, double entropy_weight) {
  MarkovMeasure markov(system.levels[0], param.transition(theta));
  return entropy_weight * entropy(markov) + integral(system, markov, potential);
}

Eigen::VectorXd entropy_integral_gradient(const ChainSystem& system,
                                          const Potential& potential,
                                          const MarkovParameterization& param,
                                          const Eigen::VectorXd& theta,
                                          double entropy_weight) {
  MarkovMeasure markov(system.levels[0], param.transition(theta));
  const Eigen::MatrixXd& P = markov.transition();
  Eigen::MatrixXd G =
      objective_p_gradient(potential, markov, entropy_weight);

  Eigen::VectorXd grad(param.parameter_count());
  // Softmax rows: dP_uv'/dtheta_uv = P_uv (delta_vv' - P_uv').
  Eigen::VectorXd row_dot = (P.array() * G.array()).rowwise().sum();
  for (int e = 0; e < param.parameter_count(); ++e) {
    auto [u, v] = param.edges()[static_cast<size_t>(e)];
    grad(e) = P(u, v) * (G(u, v) - row_dot(u));
  }
  return grad;
}

namespace {

double ascent_objective(const ChainSystem& system, const Potential& potential,
                        const MarkovParameterization& param,
                        const Eigen::VectorXd& theta, int L) {
  MarkovMeasure markov(system.levels[0], param.transition(theta));
  const double a1 = system.weights[0].to_double();
  double value = a1 * entropy(markov) + integral(system, markov, potential);
  for (int i = 1; i < system.depth(); ++i)
    value += system.weights[static_cast<size_t>(i)].to_double() *
             hm_entropy_bracket(system, markov, i, L).midpoint();
  return value;
}

Eigen::VectorXd ascent_gradient(const ChainSystem& system, const Potential& potential,
                                const MarkovParameterization& param,
                                const Eigen::VectorXd& theta, int L) {
  const double a1 = system.weights[0].to_double();
  Eigen::VectorXd grad = entropy_integral_gradient(system, potential, param, theta, a1);
  if (system.depth() > 1) {
    // Hidden-Markov terms differentiated by central differences.
    const double h = 1e-5;
    Eigen::VectorXd probe = theta;
    auto hidden_terms = [&](const Eigen::VectorXd& th) {
      MarkovMeasure markov(system.levels[0], param.transition(th));
      double v = 0;
      for (int i = 1; i < system.depth(); ++i)
        v += system.weights[static_cast<size_t>(i)].to_double() *
             hm_entropy_bracket(system, markov, i, L).midpoint();
      return v;
    };
    for (int e = 0; e < param.parameter_count(); ++e) {
      probe(e) = theta(e) + h;
      const double up = hidden_terms(probe);
      probe(e) = theta(e) - h;
      const double dn = hidden_terms(probe);
      probe(e) = theta(e);
      grad(e) += (up - dn) / (2 * h);
    }
  }
  return grad;
}

}  // namespace

OptimizeResult optimize_markov(const ChainSystem& system, const Potential& potential,
                               int L, const OptimizeOptions& opts) {
  MarkovParameterization param(system.levels[0]);
  std::mt19937_64 rng(opts.seed);
  auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto gaussian = [&]() {
    double u1 = std::max(unit(), 1e-300), u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };

  OptimizeResult best;
  double best_value = -std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < opts.restarts; ++restart) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(param.parameter_count());
    if (restart > 0)
      for (int e = 0; e < theta.size(); ++e) theta(e) = gaussian();

    double value = ascent_objective(system, potential, param, theta, L);
    double step = opts.step;
    Eigen::VectorXd grad;
    for (int it = 0; it < opts.iterations; ++it) {
      grad = ascent_gradient(system, potential, param, theta, L);
      if (grad.norm() < 1e-10) break;
      bool improved = false;
      for (int halvings = 0; halvings < 30; ++halvings) {
        Eigen::VectorXd cand = theta + step * grad;
        double cand_value = ascent_objective(system, potential, param, cand, L);
        if (cand_value > value) {
          theta = std::move(cand);
          value = cand_value;
          improved = true;
          step = std::min(step * 1.5, opts.step * 16);
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }

    if (value > best_value) {
      best_value = value;
      best.params = theta;
      best.grad_norm = ascent_gradient(system, potential, param, theta, L).norm();
      best.best_restart = restart;
    }
  }

  best.transition = param.transition(best.params);
  MarkovMeasure markov(system.levels[0], best.transition);
  best.value = objective(system, potential, markov, L);
  return best;
}

LowerBoundReport lower_bound_check(const ChainSystem& system, const Potential& potential,
                                   const MarkovMeasure& markov,
                                   const std::vector<int>& partition_lens, int n, int L) {
  if (partition_lens.size() != static_cast<size_t>(system.depth()))
    throw std::invalid_argument("one partition length per level expected");

  LowerBoundReport report;
  // Clopen partitions become covers verbatim; keep the exactness flag.
  for (int i = 0; i < system.depth(); ++i) {
    std::vector<std::vector<Word>> classes;
    for (const Word& w :
         words(system.levels[static_cast<size_t>(i)], partition_lens[static_cast<size_t>(i)]))
      classes.push_back({w});
    PartitionCover pc = cover_from_partition(system, i, classes, 1e-3);
    report.cover_delta_independent &= pc.delta_independent;
  }

  report.stage_upper = upper_pressure(system, potential, n);
  report.objective = objective(system, potential, markov, L);

  const WindowProfile profile = window_profile(system.weights, n);
  double partial = 0;
  double partial_sum_total = 0;
  long prev_m = 0;
  for (int i = 0; i < system.depth(); ++i) {
    const double ai = system.weights[static_cast<size_t>(i)].to_double();
    partial += ai;
    partial_sum_total += partial;
    const double excess = static_cast<double>(profile.m[i] - prev_m) - ai * n;
    const double log_a =
        std::log(static_cast<double>(system.levels[static_cast<size_t>(i)].symbol_count()));
    report.ceiling_entropy_slack += std::max(0.0, excess) * log_a / n;
    prev_m = profile.m[i];
  }
  const double a1 = system.weights[0].to_double();
  report.ceiling_potential_slack =
      (static_cast<double>(profile.m[0]) - a1 * n) * potential.sup_norm() / (a1 * n);

  // Finite-N SMB deviation bound computed from the measure itself.
  double min_prob = 1.0;
  for (int u = 0; u < markov.states(); ++u) {
    if (markov.stationary()(u) > 0) min_prob = std::min(min_prob, markov.stationary()(u));
    for (int v = 0; v < markov.states(); ++v)
      if (markov.transition()(u, v) > 0)
        min_prob = std::min(min_prob, markov.transition()(u, v));
  }
  const double surprisal = -std::log(min_prob);
  report.markov_slack = 2.0 * partial_sum_total * surprisal / n;

  report.bracket_width = report.objective.upper - report.objective.lower;
  report.epsilon_total = report.ceiling_entropy_slack + report.ceiling_potential_slack +
                         report.markov_slack + report.bracket_width;
  report.holds =
      report.stage_upper >= report.objective.lower - report.epsilon_total - 1e-9;
  return report;
}

VPReport vp_report(const ChainSystem& system, const Potential& potential,
                   const StageSpec& stage, int L, const OptimizeOptions& opts) {
  VPReport report;

  OptimizeResult opt = optimize_markov(system, potential, L, opts);
  report.optimizer_value = opt.value;
  report.optimizer_restart = opt.best_restart;

  report.stage_upper =
      pressure_bisect(system, potential, stage, BisectMode::single_scale).upper;

  if (stage.depth > 0) {
    try {
      FrostmanCertificate cert =
          frostman_lp(system, potential, report.stage_upper, stage);
      report.frostman_present = true;
      report.frostman_c = cert.c;
      report.frostman_gap =
          std::abs(w_lp_stage(system, potential, report.stage_upper, stage) - cert.c);
    } catch (const ResourceCapError&) {
      report.frostman_present = false;
    }
  }

  try {
    report.closed_form = fullshift_closed_form(system, potential);
    report.closed_form_present = true;
  } catch (const std::invalid_argument&) {
    report.closed_form_present = false;
  }

  std::vector<int> ones(static_cast<size_t>(system.depth()), 1);
  report.oscillation_slack =
      3.0 * oscillation(system, CoverFamily::cylinder_covers(system, ones), potential);

  report.finite_stage_gap = report.stage_upper - report.optimizer_value.midpoint();
  report.sandwich_ok = report.optimizer_value.lower <= report.stage_upper + 1e-9;
  if (report.closed_form_present) {
    report.closed_form_ok =
        std::abs(report.optimizer_value.midpoint() - report.closed_form) <= 2e-3 &&
        report.stage_upper - report.closed_form >= -1e-9;
  }
  report.ok = report.sandwich_ok && report.closed_form_ok;
  return report;
}

}  // namespace wpress
