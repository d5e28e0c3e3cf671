#pragma once

#include "wpress/covering.hpp"
#include "wpress/frostman.hpp"
#include "wpress/measures.hpp"

namespace wpress {

// Weighted variational objective of one measure:
//   a_1 h_mu + sum_{i>=2} a_i * (hidden-Markov bracket at level i) + integral.
struct ObjectiveValue {
  double lower = 0;
  double upper = 0;
  double level1_term = 0;                 // a_1 * entropy
  std::vector<EntropyBracket> level_terms;  // unscaled brackets, levels 2..k
  double integral_term = 0;
  double midpoint() const { return 0.5 * (lower + upper); }
};

ObjectiveValue objective(const ChainSystem& system, const Potential& potential,
                         const MarkovMeasure& markov, int L);

// Closed-form optimum for chains of full shifts with a range-1 potential,
// folded level by level from the bottom. Validated against a Bernoulli grid
// search in the test suite before anything else relies on it.
double fullshift_closed_form(const ChainSystem& system, const Potential& potential);

// Softmax parameterization of a Markov measure: one free parameter per
// allowed transition, rows normalized independently.
class MarkovParameterization {
 public:
  explicit MarkovParameterization(const Subshift& shift);
  int parameter_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  Eigen::MatrixXd transition(const Eigen::VectorXd& theta) const;

 private:
  int states_;
  std::vector<std::pair<int, int>> edges_;
};

// Value and analytic gradient of  entropy_weight * h(mu) + integral(mu, f)
// with respect to the softmax parameters (stationarity differentiated through
// the fundamental matrix).
double entropy_integral_value(const ChainSystem& system, const Potential& potential,
                              const MarkovParameterization& param,
                              const Eigen::VectorXd& theta, double entropy_weight);
Eigen::VectorXd entropy_integral_gradient(const ChainSystem& system,
                                          const Potential& potential,
                                          const MarkovParameterization& param,
                                          const Eigen::VectorXd& theta,
                                          double entropy_weight);

struct OptimizeOptions {
  int restarts = 8;
  int iterations = 500;
  std::uint64_t seed = 1;
  double step = 0.1;
  int L = 2;
};

struct OptimizeResult {
  Eigen::MatrixXd transition;
  Eigen::VectorXd params;
  ObjectiveValue value;
  double grad_norm = 0;
  int best_restart = 0;
};

// Multi-start projected-gradient ascent over the softmax parameters; the
// ascent objective uses bracket midpoints, the reported value keeps the full
// bracket. Deterministic given the seed.
OptimizeResult optimize_markov(const ChainSystem& system, const Potential& potential,
                               int L, const OptimizeOptions& opts = {});

struct LowerBoundReport {
  double stage_upper = 0;
  ObjectiveValue objective;
  double ceiling_entropy_slack = 0;
  double ceiling_potential_slack = 0;
  double markov_slack = 0;
  double bracket_width = 0;
  double epsilon_total = 0;
  bool holds = false;
  bool cover_delta_independent = true;
};

// Finite-stage shadow of the lower-bound theorem: the scale-n upper estimate
// must dominate the measure's objective minus itemized ceiling/convergence
// slack.
LowerBoundReport lower_bound_check(const ChainSystem& system, const Potential& potential,
                                   const MarkovMeasure& markov,
                                   const std::vector<int>& partition_lens, int n, int L);

struct VPReport {
  ObjectiveValue optimizer_value;
  double stage_upper = 0;
  bool frostman_present = false;
  double frostman_c = 0;
  double frostman_gap = 0;
  bool closed_form_present = false;
  double closed_form = 0;
  double oscillation_slack = 0;  // 3 w_f of the zeroth-symbol cover join
  double finite_stage_gap = 0;   // stage_upper - optimizer midpoint
  bool sandwich_ok = false;
  bool closed_form_ok = true;
  bool ok = false;
  int optimizer_restart = 0;
};

VPReport vp_report(const ChainSystem& system, const Potential& potential,
                   const StageSpec& stage, int L, const OptimizeOptions& opts = {});

}  // namespace wpress
