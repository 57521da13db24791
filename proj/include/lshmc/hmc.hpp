#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "lshmc/rng.hpp"
#include "lshmc/target.hpp"

namespace lshmc {

struct PhaseState {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

// H(x, v) = f(x) + 1/2 |v|^2.  Throws on a non-finite result.
double hamiltonian(const TargetDensity& target, const PhaseState& s);

// Half-kick / drift / half-kick update; exactly two gradient evaluations.
PhaseState leapfrog(const TargetDensity& target, double eta, const PhaseState& s);

struct StepOutcome {
  PhaseState proposal;
  bool accepted = false;
  double delta_H = 0.0;
  double log_u = 0.0;
  Eigen::VectorXd next_x;
  bool energy_nan = false;  // NaN delta_H counts as a (flagged) rejection
};

// One Metropolized HMC step: v ~ N(0, I), one leapfrog, accept when
// log u <= min(0, -delta_H).  The log-space test avoids exp overflow when
// delta_H is huge.
StepOutcome hmc_step(const TargetDensity& target, double eta,
                     const Eigen::VectorXd& x, RandomStream& rng);

// One MALA step with proposal N(x - h grad f(x), 2h I) and the
// Metropolis-Hastings ratio evaluated in log space.
StepOutcome mala_step(const TargetDensity& target, double h,
                      const Eigen::VectorXd& x, RandomStream& rng);

// Allocation-free step for hot loops.  Updates x in place, returns acceptance;
// draw order matches hmc_step (d normals, then one uniform).
struct HmcWorkspace {
  Eigen::VectorXd v, grad, x_prop, v_prop;
  explicit HmcWorkspace(int dim) : v(dim), grad(dim), x_prop(dim), v_prop(dim) {}
};
bool hmc_step_inplace(const TargetDensity& target, double eta,
                      Eigen::VectorXd& x, HmcWorkspace& ws, RandomStream& rng,
                      double* delta_H_out = nullptr);

struct StepSizePolicy {
  enum class Derivation { explicit_value, paper_rule };
  double eta = 0.0;
  Derivation derivation = Derivation::explicit_value;
  double log_term = 0.0;  // max(1, log(kappa/eps)) when paper_rule
};

// eta^2 = 1 / (20 L d max(1, log(kappa/eps))); the log is clamped below at 1
// so kappa = 1 targets still get a finite step.
StepSizePolicy default_step_size(double L, int d, double kappa, double eps);

struct EquivalenceReport {
  double max_abs_discrepancy = 0.0;
  int n_trials = 0;
  double step_ratio = 1.0;  // h / (eta^2 / 2)
};

// Couples the HMC and MALA accept probabilities through the shared proposal
// x~ = x + eta v - (eta^2/2) grad f(x) and reports the worst log-accept
// mismatch at h = step_ratio * eta^2 / 2.
EquivalenceReport check_equivalence(const TargetDensity& target, double eta,
                                    int n_trials, std::uint64_t seed,
                                    double step_ratio = 1.0);

}  // namespace lshmc
