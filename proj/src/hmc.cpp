#include "lshmc/hmc.hpp"

#include <cmath>
#include <stdexcept>

namespace lshmc {

double hamiltonian(const TargetDensity& target, const PhaseState& s) {
  double h = target.value(s.x) + 0.5 * s.v.squaredNorm();
  if (!std::isfinite(h))
    throw std::domain_error("hamiltonian: non-finite energy");
  return h;
}

PhaseState leapfrog(const TargetDensity& target, double eta, const PhaseState& s) {
  if (eta <= 0.0) throw std::invalid_argument("leapfrog: eta must be > 0");
  PhaseState out;
  Eigen::VectorXd g = target.gradient(s.x);
  Eigen::VectorXd v_half = s.v - 0.5 * eta * g;
  out.x = s.x + eta * v_half;
  if (!out.x.allFinite())
    throw std::domain_error("leapfrog: non-finite position");
  target.gradient(out.x, g);
  out.v = v_half - 0.5 * eta * g;
  return out;
}

namespace {

// Shared accept test; NaN energies reject.
inline bool accept_log_space(double delta_H, double log_u, bool* nan_flag) {
  if (std::isnan(delta_H)) {
    if (nan_flag) *nan_flag = true;
    return false;
  }
  return log_u <= std::min(0.0, -delta_H);
}

}  // namespace

bool hmc_step_inplace(const TargetDensity& target, double eta,
                      Eigen::VectorXd& x, HmcWorkspace& ws, RandomStream& rng,
                      double* delta_H_out) {
  rng.fill_normal(ws.v);
  double h0 = target.value(x) + 0.5 * ws.v.squaredNorm();
  target.gradient(x, ws.grad);
  ws.v_prop.noalias() = ws.v - (0.5 * eta) * ws.grad;
  ws.x_prop.noalias() = x + eta * ws.v_prop;
  target.gradient(ws.x_prop, ws.grad);
  ws.v_prop -= (0.5 * eta) * ws.grad;
  double h1 = target.value(ws.x_prop) + 0.5 * ws.v_prop.squaredNorm();
  double delta_H = h1 - h0;
  if (delta_H_out) *delta_H_out = delta_H;
  double log_u = std::log(rng.uniform());
  if (accept_log_space(delta_H, log_u, nullptr)) {
    x.swap(ws.x_prop);
    return true;
  }
  return false;
}

StepOutcome hmc_step(const TargetDensity& target, double eta,
                     const Eigen::VectorXd& x, RandomStream& rng) {
  if (eta <= 0.0) throw std::invalid_argument("hmc_step: eta must be > 0");
  StepOutcome out;
  PhaseState s{x, Eigen::VectorXd(x.size())};
  rng.fill_normal(s.v);
  double h0 = target.value(s.x) + 0.5 * s.v.squaredNorm();
  out.proposal = leapfrog(target, eta, s);
  double h1 = target.value(out.proposal.x) + 0.5 * out.proposal.v.squaredNorm();
  out.delta_H = h1 - h0;
  out.log_u = std::log(rng.uniform());
  out.accepted = accept_log_space(out.delta_H, out.log_u, &out.energy_nan);
  out.next_x = out.accepted ? out.proposal.x : x;
  return out;
}

StepOutcome mala_step(const TargetDensity& target, double h,
                      const Eigen::VectorXd& x, RandomStream& rng) {
  if (h <= 0.0) throw std::invalid_argument("mala_step: h must be > 0");
  StepOutcome out;
  Eigen::VectorXd z(x.size());
  rng.fill_normal(z);
  Eigen::VectorXd gx = target.gradient(x);
  Eigen::VectorXd mean_fwd = x - h * gx;
  Eigen::VectorXd prop = mean_fwd + std::sqrt(2.0 * h) * z;
  Eigen::VectorXd gp = target.gradient(prop);
  double log_fwd = -(prop - mean_fwd).squaredNorm() / (4.0 * h);
  double log_rev = -(x - (prop - h * gp)).squaredNorm() / (4.0 * h);
  double log_ratio =
      (-target.value(prop) + log_rev) - (-target.value(x) + log_fwd);
  out.proposal.x = prop;
  out.proposal.v = z;
  out.delta_H = -log_ratio;
  out.log_u = std::log(rng.uniform());
  out.accepted = accept_log_space(out.delta_H, out.log_u, &out.energy_nan);
  out.next_x = out.accepted ? prop : x;
  return out;
}

StepSizePolicy default_step_size(double L, int d, double kappa, double eps) {
  if (L <= 0.0 || d < 1) throw std::invalid_argument("default_step_size: bad L or d");
  if (kappa < 1.0) throw std::invalid_argument("default_step_size: kappa must be >= 1");
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("default_step_size: eps must be in (0, 1]");
  StepSizePolicy p;
  p.derivation = StepSizePolicy::Derivation::paper_rule;
  p.log_term = std::max(1.0, std::log(kappa / eps));
  p.eta = std::sqrt(1.0 / (20.0 * L * d * p.log_term));
  return p;
}

EquivalenceReport check_equivalence(const TargetDensity& target, double eta,
                                    int n_trials, std::uint64_t seed,
                                    double step_ratio) {
  if (n_trials < 1)
    throw std::invalid_argument("check_equivalence: n_trials >= 1");
  const int d = target.dim();
  const double L = target.smoothness();
  const double h = step_ratio * eta * eta / 2.0;
  RandomStream rng(seed);
  EquivalenceReport rep;
  rep.n_trials = n_trials;
  rep.step_ratio = step_ratio;

  Eigen::VectorXd x(d), v(d);
  for (int trial = 0; trial < n_trials; ++trial) {
    for (int i = 0; i < d; ++i)
      x[i] = target.minimizer()[i] + rng.normal() / std::sqrt(L);
    rng.fill_normal(v);

    Eigen::VectorXd gx = target.gradient(x);
    Eigen::VectorXd v_half = v - 0.5 * eta * gx;
    Eigen::VectorXd prop = x + eta * v_half;
    Eigen::VectorXd gp = target.gradient(prop);
    Eigen::VectorXd v_tilde = v_half - 0.5 * eta * gp;

    double log_acc_hmc = -(target.value(prop) + 0.5 * v_tilde.squaredNorm()) +
                         (target.value(x) + 0.5 * v.squaredNorm());

    double log_fwd = -(prop - (x - h * gx)).squaredNorm() / (4.0 * h);
    double log_rev = -(x - (prop - h * gp)).squaredNorm() / (4.0 * h);
    double log_acc_mala =
        (-target.value(prop) + log_rev) - (-target.value(x) + log_fwd);

    double disc = std::abs(log_acc_hmc - log_acc_mala);
    if (disc > rep.max_abs_discrepancy) rep.max_abs_discrepancy = disc;
  }
  return rep;
}

}  // namespace lshmc
