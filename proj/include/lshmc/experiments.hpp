#pragma once

#include <cstdint>
#include <vector>

#include "lshmc/target.hpp"

namespace lshmc {

struct LowerBoundRunSpec {
  double kappa = 1.0;
  int dim = 1;
  std::vector<double> c_values;  // eta = c / sqrt(kappa), positive ascending
  long n_draws = 1;
  std::uint64_t seed = 0;
};

struct LowerBoundRow {
  double c = 0.0;
  double eta = 0.0;
  double mean_log_accept = 0.0;  // mean of min(0, -delta_H)
  double mean_log_accept_se = 0.0;
  double accept_rate = 0.0;
  long n_draws = 0;
  double max_identity_rel_err = 0.0;  // generic vs quadratic delta_H
  long hambound_violations = 0;       // only counted when eta^2 kappa >= 20
  bool hambound_checked = false;
};

// Per step size eta = c kappa^{-1/2}: draws (x, v) with x exactly stationary
// on the hard quadratic instance, computes delta_H both generically and via
// the quadratic identity (eta^2/8)(x~^T D^2 x~ - x^T D^2 x), and records the
// accept statistics.
std::vector<LowerBoundRow> lower_bound_experiment(const LowerBoundRunSpec& spec);

// Fitted slope of log(-mean_log_accept) against log(c).
double lower_bound_fitted_exponent(const std::vector<LowerBoundRow>& rows);

struct ScalingRunSpec {
  std::vector<double> kappas;
  std::vector<int> dims;
  double eps = 0.05;          // accuracy driving the step-size rule
  double ks_threshold = 0.05;
  long max_iters = 4000000;
  int n_chains = 256;
  double C = 1.0;             // budget multiplier, reported alongside
  std::uint64_t seed = 0;
};

struct ScalingRow {
  double kappa = 0.0;
  int dim = 0;
  double eta = 0.0;
  long k_hat = 0;
  double accept_rate = 0.0;
  bool resolved = false;
};

// For each (kappa, d) grid cell: runs n_chains chains of the hard instance
// from warm starts at the default step size, pooling all iterates up to time k
// across chains (the running-average law of the iterates), and records the
// first k at which the worst per-coordinate KS distance to the stationary
// marginal drops below ks_threshold.  KS is evaluated on an equiprobable
// 2048-bin histogram, so the pooled statistic is exact to within 1/2048.
std::vector<ScalingRow> scaling_study(const ScalingRunSpec& spec);

}  // namespace lshmc
