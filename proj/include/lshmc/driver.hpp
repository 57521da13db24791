#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lshmc/hmc.hpp"
#include "lshmc/target.hpp"

namespace lshmc {

struct HmcConfig {
  double eta = 0.0;        // step size (see default_step_size)
  double eps = 1.0;        // target accuracy in (0, 1]
  long k = 1;              // inner iteration budget
  int outer_rounds = 1;    // boosting rounds, ceil(log(1/eps)) when auto
  std::uint64_t seed = 0;
  int n_chains = 1;
  long record_every = 1;   // thinning; 0 = auto (bounded memory)
};

struct ChainResult {
  Eigen::MatrixXd samples;            // recorded iterates, row 0 is x0
  std::vector<long> record_iters;     // iteration index of each recorded row
  std::vector<std::uint8_t> accept_flags;  // per step
  std::vector<double> delta_H;             // per step
  std::vector<double> grad_norms;          // per step, at the pre-step point
  long nan_steps = 0;
  Eigen::VectorXd final_x;
  std::uint64_t seed = 0;

  double accept_rate() const;
};

struct WarmnessReport {
  double log_beta = 0.0;           // (d/2) log kappa
  double eps = 1.0;
  double log_beta_over_eps = 0.0;  // log_beta + log(1/eps)
};

// x* + L^{-1/2} z with z ~ N(0, I_d).
Eigen::VectorXd warm_start(const TargetDensity& target, RandomStream& rng);

WarmnessReport log_warmness(const TargetDensity& target, double eps);

struct IterationBudget {
  long k_inner = 1;
  int rounds = 1;
};

// k_inner = ceil(C kappa d max(1, log(kappa/eps)) max(1, log(d max(1, log(kappa/eps)))));
// rounds = ceil(max(1, log(1/eps))).
IterationBudget iteration_budget(double kappa, int d, double eps, double C);

// Applies cfg.k HMC steps from x0, recording every cfg.record_every iterates.
// Fully deterministic given (cfg.seed, cfg, target).
ChainResult run_chain(const TargetDensity& target, const HmcConfig& cfg,
                      const Eigen::VectorXd& x0);

// Draws j uniform in {0, ..., k-1} (from rng, before any step randomness),
// runs j HMC steps from x0, returns the endpoint.  Its law is the running
// average of the first k iterate laws.
Eigen::VectorXd averaged_sample(const TargetDensity& target,
                                const HmcConfig& cfg,
                                const Eigen::VectorXd& x0, RandomStream& rng);

// Warm start, then outer_rounds rounds of averaged_sample, each restarted from
// the previous round's output point.
Eigen::VectorXd boosted_sample(const TargetDensity& target,
                               const HmcConfig& cfg, RandomStream& rng);

}  // namespace lshmc
