#pragma once

#include <string>
#include <vector>

#include "wpress/variational.hpp"

namespace wpress::suites {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string details;
  double seconds = 0;
};

// Independent oracle for the full-shift closed form: dense grid search over
// Bernoulli measures (coarse sweep plus one local refinement). Evaluates the
// weighted entropies directly, not through the closed form.
double bernoulli_grid_search(const ChainSystem& system, const Potential& potential,
                             int coarse_steps = 50, int refine_steps = 20,
                             double refine_radius = 0.03);

std::vector<CheckResult> weighted_entropy_full_shift();  // criterion 1
std::vector<CheckResult> pressure_with_potential_gap();  // criterion 2
std::vector<CheckResult> lp_strong_duality();            // criterion 3
std::vector<CheckResult> power_rule();                   // criterion 4
std::vector<CheckResult> weighted_smb();                 // criterion 5
std::vector<CheckResult> lower_bound_theorem();          // criterion 6
std::vector<CheckResult> entropy_lemmas();               // criterion 7
std::vector<CheckResult> numerical_hygiene();            // criterion 8

// vp -> {1,2,6}; smb -> {5}; duality -> {3}; power -> {4}; all -> {1..8}.
std::vector<CheckResult> run_suite(const std::string& name);

}  // namespace wpress::suites
