#include "lshmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lshmc/diagnostics.hpp"
#include "lshmc/driver.hpp"
#include "lshmc/hmc.hpp"

namespace lshmc {

std::vector<LowerBoundRow> lower_bound_experiment(const LowerBoundRunSpec& spec) {
  if (spec.kappa < 1.0 || spec.dim < 1 || spec.n_draws < 1)
    throw std::invalid_argument("lower_bound_experiment: bad spec");
  for (std::size_t i = 0; i < spec.c_values.size(); ++i) {
    if (spec.c_values[i] <= 0.0 ||
        (i > 0 && spec.c_values[i] <= spec.c_values[i - 1]))
      throw std::invalid_argument(
          "lower_bound_experiment: c_values must be positive ascending");
  }
  TargetSpec ts;
  ts.kind = TargetKind::hard_instance;
  ts.dim = spec.dim;
  ts.kappa = spec.kappa;
  TargetDensity target = make_target(ts);
  const Eigen::VectorXd& lambda = target.eigenvalues();
  const int d = spec.dim;
  const double kappa = spec.kappa;

  std::vector<LowerBoundRow> rows;
  for (std::size_t ci = 0; ci < spec.c_values.size(); ++ci) {
    const double c = spec.c_values[ci];
    const double eta = c / std::sqrt(kappa);
    const double eta2 = eta * eta;
    const bool check_hambound = eta2 * kappa >= 20.0 - 1e-9;

    LowerBoundRow row;
    row.c = c;
    row.eta = eta;
    row.n_draws = spec.n_draws;
    row.hambound_checked = check_hambound;

    RandomStream rng = RandomStream::substream(spec.seed, ci);
    Eigen::VectorXd x(d), v(d), v_half(d), x_prop(d), v_prop(d);
    double sum_la = 0.0, sumsq_la = 0.0;
    long accepts = 0;
    for (long draw = 0; draw < spec.n_draws; ++draw) {
      target.sample_stationary(rng, x);
      rng.fill_normal(v);

      v_half = v.array() - 0.5 * eta * lambda.array() * x.array();
      x_prop = x + eta * v_half;
      v_prop = v_half.array() - 0.5 * eta * lambda.array() * x_prop.array();

      double h0 = 0.5 * (lambda.array() * x.array().square()).sum() +
                  0.5 * v.squaredNorm();
      double h1 = 0.5 * (lambda.array() * x_prop.array().square()).sum() +
                  0.5 * v_prop.squaredNorm();
      double dh_generic = h1 - h0;
      double dh_identity =
          (eta2 / 8.0) *
          (lambda.array().square() *
           (x_prop.array().square() - x.array().square()))
              .sum();

      double rel = std::abs(dh_generic - dh_identity) /
                   std::max({std::abs(dh_generic), std::abs(dh_identity), 1e-6});
      row.max_identity_rel_err = std::max(row.max_identity_rel_err, rel);

      if (check_hambound) {
        double xhat_sq = x.head(d - 1).squaredNorm();
        double xd = x[d - 1];
        double rhs = std::pow(eta, 6) * std::pow(kappa, 4) / 128.0 * xhat_sq -
                     std::pow(eta, 4) * kappa * kappa / 4.0 * v.squaredNorm() +
                     (eta2 / 8.0) *
                         (eta2 * eta2 / 8.0 - eta2 - 1.0) * xd * xd;
        if (dh_identity < rhs - 1e-8 * std::max(1.0, std::abs(rhs)))
          ++row.hambound_violations;
      }

      double la = std::min(0.0, -dh_generic);
      sum_la += la;
      sumsq_la += la * la;
      if (std::log(rng.uniform()) <= la) ++accepts;
    }
    row.mean_log_accept = sum_la / spec.n_draws;
    double var = std::max(
        0.0, sumsq_la / spec.n_draws - row.mean_log_accept * row.mean_log_accept);
    row.mean_log_accept_se = std::sqrt(var / spec.n_draws);
    row.accept_rate = static_cast<double>(accepts) / spec.n_draws;
    rows.push_back(row);
  }
  return rows;
}

double lower_bound_fitted_exponent(const std::vector<LowerBoundRow>& rows) {
  std::vector<double> log_c, log_neg;
  for (const auto& r : rows) {
    if (r.mean_log_accept < 0.0) {
      log_c.push_back(std::log(r.c));
      log_neg.push_back(std::log(-r.mean_log_accept));
    }
  }
  return fit_slope(log_c, log_neg);
}

namespace {

constexpr int kKsBins = 2048;

// Checkpoint schedule: every iteration up to 20, then 12% geometric growth.
long next_checkpoint(long k) {
  if (k < 20) return k + 1;
  return std::max(k + 1, static_cast<long>(std::ceil(k * 1.12)));
}

}  // namespace

std::vector<ScalingRow> scaling_study(const ScalingRunSpec& spec) {
  if (spec.kappas.empty() || spec.dims.empty())
    throw std::invalid_argument("scaling_study: empty grid");
  if (spec.ks_threshold <= 0.0 || spec.ks_threshold >= 1.0)
    throw std::invalid_argument("scaling_study: ks_threshold in (0, 1)");

  std::vector<ScalingRow> rows;
  std::uint64_t cell_index = 0;
  for (double kappa : spec.kappas) {
    for (int d : spec.dims) {
      TargetSpec ts;
      ts.kind = TargetKind::hard_instance;
      ts.dim = d;
      ts.kappa = kappa;
      TargetDensity target = make_target(ts);
      const double eta =
          default_step_size(target.smoothness(), d, target.condition_number(),
                            spec.eps)
              .eta;

      // Equiprobable histogram bin edges per coordinate (stationary marginals
      // are N(0, 1/lambda_i)).
      std::vector<std::vector<double>> edges(d);
      for (int i = 0; i < d; ++i) {
        edges[i].resize(kKsBins - 1);
        double s = 1.0 / std::sqrt(target.eigenvalues()[i]);
        for (int b = 0; b + 1 < kKsBins; ++b)
          edges[i][b] =
              s * inv_normal_cdf(static_cast<double>(b + 1) / kKsBins);
      }
      std::vector<std::vector<std::uint64_t>> counts(
          d, std::vector<std::uint64_t>(kKsBins, 0));

      std::uint64_t cell_seed = spec.seed + 0x51ed2701u * cell_index;
      std::vector<Eigen::VectorXd> chains(spec.n_chains);
      std::vector<RandomStream> streams;
      streams.reserve(spec.n_chains);
      for (int ch = 0; ch < spec.n_chains; ++ch) {
        streams.push_back(RandomStream::substream(cell_seed, ch));
        chains[ch] = warm_start(target, streams.back());
      }

      HmcWorkspace ws(d);
      long accepts = 0, steps = 0, pooled = 0;
      ScalingRow row;
      row.kappa = kappa;
      row.dim = d;
      row.eta = eta;

      long checkpoint = 1;
      for (long k = 1; k <= spec.max_iters && !row.resolved; ++k) {
        for (int ch = 0; ch < spec.n_chains; ++ch) {
          if (hmc_step_inplace(target, eta, chains[ch], ws, streams[ch]))
            ++accepts;
          ++steps;
          const Eigen::VectorXd& x = chains[ch];
          for (int i = 0; i < d; ++i) {
            const auto& e = edges[i];
            int bin = static_cast<int>(
                std::upper_bound(e.begin(), e.end(), x[i]) - e.begin());
            ++counts[i][bin];
          }
          ++pooled;
        }
        if (k == checkpoint) {
          checkpoint = next_checkpoint(k);
          double worst = 0.0;
          const double n = static_cast<double>(pooled);
          for (int i = 0; i < d && worst < 1.0; ++i) {
            std::uint64_t cum = 0;
            double di = 0.0;
            for (int b = 0; b + 1 < kKsBins; ++b) {
              cum += counts[i][b];
              di = std::max(di, std::abs(cum / n - static_cast<double>(b + 1) /
                                                       kKsBins));
            }
            worst = std::max(worst, di);
          }
          if (worst < spec.ks_threshold) {
            row.resolved = true;
            row.k_hat = k;
          }
        }
      }
      if (!row.resolved) row.k_hat = spec.max_iters;
      row.accept_rate =
          steps > 0 ? static_cast<double>(accepts) / steps : 0.0;
      rows.push_back(row);
      ++cell_index;
    }
  }
  return rows;
}

}  // namespace lshmc
