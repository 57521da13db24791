#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lshmc/rng.hpp"
#include "lshmc/stats.hpp"
#include "lshmc/target.hpp"

namespace lshmc {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n = 0;
};

struct TailFraction {
  double c = 0.0;
  double threshold = 0.0;       // sqrt(Ld) + c sqrt(L) log d
  double fraction = 0.0;        // empirical exceedance
  double bound = 0.0;           // 3 d^{-c}
  double gaussian_bound = 0.0;  // d^{-c^2}, meaningful for Gaussian targets
};

struct EmpiricalSummary {
  long n_samples = 0;
  double mean_grad_norm = 0.0;
  double mean_grad_norm_se = 0.0;
  double mean_bound = 0.0;  // sqrt(Ld)
  std::vector<TailFraction> tail_fractions;
  double accept_rate = 0.0;
  double mean_delta_H = 0.0;
  std::vector<double> ks_per_coordinate;
  double omega_fraction = 0.0;  // fraction of samples inside Omega
};

struct OmegaThreshold {
  double value = 0.0;  // 5 sqrt(L) d max(1, log(kappa/eps))
  static OmegaThreshold paper_rule(const TargetDensity& target, double eps);
};

bool omega_indicator(const TargetDensity& target, const OmegaThreshold& thr,
                     const Eigen::VectorXd& x);

// Gradient-norm concentration statistics over a sample matrix (rows = draws).
// eps fixes the Omega threshold used for omega_fraction.
EmpiricalSummary grad_concentration_report(const TargetDensity& target,
                                           const Eigen::MatrixXd& samples,
                                           const std::vector<double>& c_values,
                                           double eps = 1.0);

// Closed-form TV between the one-step proposal laws from x and y:
// 2 Phi(r / 2 eta) - 1 with r the distance between the proposal means.
double proposal_overlap_tv(const TargetDensity& target, double eta,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Monte Carlo estimate of 1 - E_v[min(1, exp(-delta_H))], the probability the
// chain stays put at x.
McEstimate rejection_probability(const TargetDensity& target, double eta,
                                 const Eigen::VectorXd& x, long n_mc,
                                 RandomStream& rng);

struct ChiSqTail {
  double threshold = 0.0;  // d + 2 sqrt(d t) + 2 t
  double bound = 0.0;      // exp(-t)
};
ChiSqTail chi_sq_tail_bound(long d, double t);

struct ProductBound {
  double partial_product = 0.0;  // truncated, evaluated in log space
  double bound = 0.0;            // (1 + sqrt(C)) / (1 - sqrt(C))
  bool holds = false;
};
ProductBound product_bound_check(double C, int k_terms);

// One row of the machine-readable claim report.
struct ClaimCheck {
  std::string claim_id;
  std::string paper_anchor;
  double statistic = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  bool pass = false;
};

}  // namespace lshmc
