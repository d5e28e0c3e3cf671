#pragma once

#include "wpress/covering.hpp"

namespace wpress {

// Probability measure on admissible depth-D level-1 cylinders.
struct StageMeasure {
  long depth = 0;
  std::vector<Word> support;  // lexicographic admissible depth-D words
  Eigen::VectorXd mass;       // aligned with support, sums to 1
};

struct FrostmanCertificate {
  double c = 0;
  StageMeasure measure;
  double max_violation = 0;
  bool no_mass_certifiable = false;
};

// Packing dual of the stage covering program: the largest total mass c such
// that a probability measure on depth-D cylinders obeys
//   mu(A) <= (1/c) exp(weight_of(A, s))
// for every weighted cylinder A at scales [N, n_max]. By strong duality c
// matches w_lp_stage up to solver tolerance.
FrostmanCertificate frostman_lp(const ChainSystem& system, const Potential& potential,
                                double s, const StageSpec& stage,
                                std::uint64_t nonzero_cap = kDefaultLpNonzeroCap);

// Recomputes the certificate inequality over every weighted cylinder of the
// stage and returns max over A of mu(A) - (1/c) exp(weight_of(A, s)).
double verify_frostman(const ChainSystem& system, const Potential& potential,
                       const FrostmanCertificate& certificate, double s,
                       const StageSpec& stage);

// |covering optimum - packing optimum|, both solved independently; throws
// when the gap exceeds 1e-8 * max(1, covering value).
double duality_gap(const ChainSystem& system, const Potential& potential, double s,
                   const StageSpec& stage);

}  // namespace wpress
