#include "lshmc/driver.hpp"

#include <cmath>
#include <stdexcept>

namespace lshmc {

double ChainResult::accept_rate() const {
  if (accept_flags.empty()) return 0.0;
  long n = 0;
  for (auto a : accept_flags) n += a;
  return static_cast<double>(n) / static_cast<double>(accept_flags.size());
}

Eigen::VectorXd warm_start(const TargetDensity& target, RandomStream& rng) {
  const double scale = 1.0 / std::sqrt(target.smoothness());
  Eigen::VectorXd x(target.dim());
  for (int i = 0; i < target.dim(); ++i)
    x[i] = target.minimizer()[i] + scale * rng.normal();
  return x;
}

WarmnessReport log_warmness(const TargetDensity& target, double eps) {
  WarmnessReport r;
  r.log_beta = 0.5 * target.dim() * std::log(target.condition_number());
  r.eps = eps;
  r.log_beta_over_eps = r.log_beta + std::log(1.0 / eps);
  return r;
}

IterationBudget iteration_budget(double kappa, int d, double eps, double C) {
  if (kappa < 1.0 || d < 1 || eps <= 0.0 || eps > 1.0 || C <= 0.0)
    throw std::invalid_argument("iteration_budget: bad arguments");
  double log_ke = std::max(1.0, std::log(kappa / eps));
  double log_dl = std::max(1.0, std::log(d * log_ke));
  IterationBudget b;
  b.k_inner = static_cast<long>(std::ceil(C * kappa * d * log_ke * log_dl));
  b.rounds = static_cast<int>(std::ceil(std::max(1.0, std::log(1.0 / eps))));
  return b;
}

ChainResult run_chain(const TargetDensity& target, const HmcConfig& cfg,
                      const Eigen::VectorXd& x0) {
  if (!x0.allFinite()) throw std::domain_error("run_chain: non-finite x0");
  const int d = target.dim();
  long record_every = cfg.record_every;
  if (record_every <= 0) {
    // auto-thin: at most ~1e6 recorded scalars
    record_every = std::max<long>(1, (cfg.k * d) / 1000000);
  }

  ChainResult res;
  res.seed = cfg.seed;
  long n_records = cfg.k / record_every + 1;
  res.samples.resize(n_records, d);
  res.samples.row(0) = x0;
  res.record_iters.assign(1, 0);
  res.accept_flags.reserve(cfg.k);
  res.delta_H.reserve(cfg.k);
  res.grad_norms.reserve(cfg.k);

  RandomStream rng(cfg.seed);
  HmcWorkspace ws(d);
  Eigen::VectorXd x = x0;
  long row = 1;
  for (long it = 1; it <= cfg.k; ++it) {
    res.grad_norms.push_back(target.gradient(x).norm());
    double dh;
    bool acc;
    try {
      acc = hmc_step_inplace(target, cfg.eta, x, ws, rng, &dh);
    } catch (const std::domain_error& e) {
      throw std::domain_error("run_chain: iteration " + std::to_string(it) +
                              ": " + e.what());
    }
    if (std::isnan(dh)) ++res.nan_steps;
    res.accept_flags.push_back(acc ? 1 : 0);
    res.delta_H.push_back(dh);
    if (it % record_every == 0 && row < n_records) {
      res.samples.row(row) = x;
      res.record_iters.push_back(it);
      ++row;
    }
  }
  res.samples.conservativeResize(row, d);
  res.final_x = x;
  return res;
}

Eigen::VectorXd averaged_sample(const TargetDensity& target,
                                const HmcConfig& cfg,
                                const Eigen::VectorXd& x0, RandomStream& rng) {
  if (cfg.k < 1) throw std::invalid_argument("averaged_sample: k >= 1");
  long j = rng.uniform_index(cfg.k);  // stream order: j first, then steps
  Eigen::VectorXd x = x0;
  HmcWorkspace ws(target.dim());
  for (long it = 0; it < j; ++it)
    hmc_step_inplace(target, cfg.eta, x, ws, rng, nullptr);
  return x;
}

Eigen::VectorXd boosted_sample(const TargetDensity& target,
                               const HmcConfig& cfg, RandomStream& rng) {
  if (cfg.outer_rounds < 1)
    throw std::invalid_argument("boosted_sample: outer_rounds >= 1");
  Eigen::VectorXd x = warm_start(target, rng);
  for (int round = 0; round < cfg.outer_rounds; ++round)
    x = averaged_sample(target, cfg, x, rng);
  return x;
}

}  // namespace lshmc
