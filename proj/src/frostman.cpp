#include "wpress/frostman.hpp"

#include <cmath>
#include <map>

namespace wpress {

namespace {

constexpr double kNoMassThreshold = 1e-250;

}  // namespace

FrostmanCertificate frostman_lp(const ChainSystem& system, const Potential& potential,
                                double s, const StageSpec& stage,
                                std::uint64_t nonzero_cap) {
  StageInstance inst = build_stage_instance(system, potential, s, stage, nonzero_cap);

  // Variables: one mass per dedup group of base cylinders (cylinders with the
  // same deepest key are interchangeable). Constraints: one per column.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(inst.columns(), inst.groups());
  for (int g = 0; g < inst.groups(); ++g)
    for (int col : inst.group_columns[static_cast<size_t>(g)]) A(col, g) = 1.0;
  Eigen::VectorXd b =
      Eigen::Map<const Eigen::VectorXd>(inst.column_cost.data(), inst.columns());
  Eigen::VectorXd c = Eigen::VectorXd::Ones(inst.groups());

  LpSolution sol = solve_max_le(A, b, c);
  if (sol.status != LpSolution::Status::optimal)
    throw std::runtime_error("packing LP did not reach an optimum");

  FrostmanCertificate cert;
  cert.c = sol.value;
  cert.measure.depth = stage.depth;
  cert.measure.support = inst.base_words;
  cert.measure.mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inst.base_words.size()));

  if (cert.c <= kNoMassThreshold) {
    cert.c = 0;
    cert.no_mass_certifiable = true;
    cert.max_violation = 0;
    return cert;
  }

  // Group mass spreads uniformly over the cylinders it merged; renormalize
  // so the total is exactly 1, then re-verify rather than trusting the basis.
  for (size_t wi = 0; wi < inst.base_words.size(); ++wi) {
    const int g = inst.group_of_word[wi];
    cert.measure.mass(static_cast<Eigen::Index>(wi)) =
        sol.primal(g) / static_cast<double>(inst.group_size[static_cast<size_t>(g)]);
  }
  cert.measure.mass /= cert.measure.mass.sum();
  cert.max_violation = verify_frostman(system, potential, cert, s, stage);
  return cert;
}

double verify_frostman(const ChainSystem& system, const Potential& potential,
                       const FrostmanCertificate& certificate, double s,
                       const StageSpec& stage) {
  validate_stage(system, stage);
  if (certificate.measure.depth != stage.depth)
    throw std::invalid_argument("certificate depth does not match the stage");
  if (certificate.c <= 0) return -std::numeric_limits<double>::infinity();

  double worst = -std::numeric_limits<double>::infinity();
  for (int n = stage.N; n <= stage.n_max; ++n) {
    CylinderWalk walk(system, n);
    // Accumulate measure mass per scale-n key.
    std::map<Word, double> mass_of;
    for (size_t wi = 0; wi < certificate.measure.support.size(); ++wi)
      mass_of[walk.key_of_prefix(certificate.measure.support[wi])] +=
          certificate.measure.mass(static_cast<Eigen::Index>(wi));

    for_each_weighted_cylinder(system, n, [&](std::span<const int> key) {
      Word k(key.begin(), key.end());
      auto it = mass_of.find(k);
      const double mu = it == mass_of.end() ? 0.0 : it->second;
      const double bound =
          std::exp(weight_of(system, potential, walk.cylinder_from_key(key), s)) /
          certificate.c;
      worst = std::max(worst, mu - bound);
    });
  }
  return worst;
}

double duality_gap(const ChainSystem& system, const Potential& potential, double s,
                   const StageSpec& stage) {
  const double primal = w_lp_stage(system, potential, s, stage);
  const double dual = frostman_lp(system, potential, s, stage).c;
  const double gap = std::abs(primal - dual);
  if (gap > 1e-8 * std::max(1.0, primal))
    throw std::logic_error("covering/packing duality gap " + std::to_string(gap) +
                           " at value " + std::to_string(primal));
  return gap;
}

}  // namespace wpress
