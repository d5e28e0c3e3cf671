#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wpress/simplex.hpp"
#include "wpress/weighted_cylinders.hpp"

namespace wpress {

inline constexpr std::uint64_t kDefaultLpNonzeroCap = 200'000;

// Scale range [N, n_max] with covering constraints imposed on admissible
// depth-D level-1 cylinders; depth must reach past the deepest window.
struct StageSpec {
  int N = 1;
  int n_max = 1;
  long depth = 0;

  static StageSpec single(int n, long depth = 0) { return StageSpec{n, n, depth}; }
};

void validate_stage(const ChainSystem& system, const StageSpec& stage);

struct PressureBracket {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::string lower_source;
  std::string upper_source;
};

// log sum over all weighted n-cylinders A of exp(weight_of(A, s)).
// Exact log-space transfer DP when the potential has range 1; otherwise
// enumerates level-1 windows under the cap.
double single_scale_log_sum(const ChainSystem& system, const Potential& potential,
                            double s, int n,
                            std::uint64_t cap = kDefaultEnumerationCap);

// (1/n) * single_scale_log_sum(0, n): the s at which the stage-n sum is 1.
double upper_pressure(const ChainSystem& system, const Potential& potential, int n);

// Shared columns/rows of the stage covering and packing programs.
// Columns are weighted cylinders for each scale in [N, n_max]; rows are
// admissible depth-D cylinders, deduplicated by their scale-n_max key (all
// shallower keys are prefixes of it, so equal keys give equal rows).
struct StageInstance {
  StageSpec stage;
  std::vector<Word> base_words;             // depth-D words, lexicographic
  std::vector<int> group_of_word;           // dedup group per base word
  std::vector<long> group_size;
  std::vector<std::vector<int>> group_columns;  // per group, one column per scale
  std::vector<double> column_cost;              // exp(weight_of(A, s))
  std::vector<std::pair<int, Word>> column_id;  // (n, free-symbol key)
  int columns() const { return static_cast<int>(column_cost.size()); }
  int groups() const { return static_cast<int>(group_columns.size()); }
};

StageInstance build_stage_instance(const ChainSystem& system,
                                   const Potential& potential, double s,
                                   const StageSpec& stage,
                                   std::uint64_t nonzero_cap = kDefaultLpNonzeroCap);

// Optimal value of the fractional covering program
//   min sum_j c_j exp(weight_of(A_j, s))  s.t. every base cylinder is
//   fractionally covered, c_j >= 0.
double w_lp_stage(const ChainSystem& system, const Potential& potential, double s,
                  const StageSpec& stage,
                  std::uint64_t nonzero_cap = kDefaultLpNonzeroCap);

enum class BisectMode { single_scale, lp };

// Bisects s until the stage value's log crosses 0; asserts monotonicity of
// the stage value along the way. Single-scale mode works at n = n_max.
PressureBracket pressure_bisect(const ChainSystem& system, const Potential& potential,
                                const StageSpec& stage, BisectMode mode,
                                double tol = 1e-9);

struct LambdaWReport {
  double lp_value = 0;
  double set_cover_value = 0;  // min over n in [N, n_max] of the stage-n sum
  int set_cover_n = 0;
  bool lp_le_set_cover = false;
};

LambdaWReport lambda_vs_w_check(const ChainSystem& system, const Potential& potential,
                                double s, const StageSpec& stage);

// --- M-th power system ------------------------------------------------

// Same sequence space with time run in M-blocks: alphabets become admissible
// M-words, codes act blockwise, weights are unchanged.
ChainSystem power_system(const ChainSystem& system, int M);
Potential power_potential(const ChainSystem& system, const Potential& potential, int M);

struct PowerRuleScaleReport {
  int n = 0;
  double base_estimate = 0;   // at scale M*n on the original system
  double power_estimate = 0;  // at scale n on the power system, divided by M
  double slack = 0;
  bool within_slack = false;
};

struct PowerRuleReport {
  int M = 1;
  bool ok = false;
  std::vector<int> join_scales;
  std::vector<PowerJoinReport> joins;
  std::vector<PowerRuleScaleReport> scales;
};

// Stage estimates run at every n in n_list; the exact join identity runs at
// the (cheaper) scales in join_n_list, defaulting to {1, 2} when empty.
PowerRuleReport power_rule_check(const ChainSystem& system, const Potential& potential,
                                 const CoverFamily& cover, int M,
                                 const std::vector<int>& n_list,
                                 std::vector<int> join_n_list = {},
                                 std::uint64_t join_cap = kDefaultEnumerationCap);

}  // namespace wpress
