#include "lshmc/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "lshmc/hmc.hpp"

namespace lshmc {

double inv_normal_cdf(double p) {
  if (p <= 0.0 || p >= 1.0)
    throw std::domain_error("inv_normal_cdf: p must be in (0, 1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // One Halley refinement against the erfc-based CDF.
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need matching series, n >= 2");
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= x.size();
  ym /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  return sxy / sxx;
}

OmegaThreshold OmegaThreshold::paper_rule(const TargetDensity& target,
                                          double eps) {
  OmegaThreshold t;
  double log_term = std::max(1.0, std::log(target.condition_number() / eps));
  t.value = 5.0 * std::sqrt(target.smoothness()) * target.dim() * log_term;
  return t;
}

bool omega_indicator(const TargetDensity& target, const OmegaThreshold& thr,
                     const Eigen::VectorXd& x) {
  return target.gradient(x).norm() <= thr.value;
}

EmpiricalSummary grad_concentration_report(const TargetDensity& target,
                                           const Eigen::MatrixXd& samples,
                                           const std::vector<double>& c_values,
                                           double eps) {
  const long n = samples.rows();
  if (n < 1)
    throw std::invalid_argument("grad_concentration_report: empty sample set");
  const int d = target.dim();
  const double L = target.smoothness();
  const double sqrt_Ld = std::sqrt(L * d);
  const double log_d = std::log(static_cast<double>(d));
  const OmegaThreshold omega = OmegaThreshold::paper_rule(target, eps);

  EmpiricalSummary s;
  s.n_samples = n;
  s.mean_bound = sqrt_Ld;
  std::vector<double> norms(n);
  double sum = 0.0, sumsq = 0.0;
  long in_omega = 0;
  Eigen::VectorXd g(d);
  for (long i = 0; i < n; ++i) {
    target.gradient(samples.row(i).transpose(), g);
    norms[i] = g.norm();
    sum += norms[i];
    sumsq += norms[i] * norms[i];
    if (norms[i] <= omega.value) ++in_omega;
  }
  s.mean_grad_norm = sum / n;
  double var = std::max(0.0, sumsq / n - s.mean_grad_norm * s.mean_grad_norm);
  s.mean_grad_norm_se = std::sqrt(var / n);
  s.omega_fraction = static_cast<double>(in_omega) / n;

  for (double c : c_values) {
    TailFraction t;
    t.c = c;
    t.threshold = sqrt_Ld + c * std::sqrt(L) * log_d;
    long exceed = 0;
    for (double v : norms)
      if (v >= t.threshold) ++exceed;
    t.fraction = static_cast<double>(exceed) / n;
    t.bound = 3.0 * std::pow(static_cast<double>(d), -c);
    t.gaussian_bound = std::pow(static_cast<double>(d), -c * c);
    s.tail_fractions.push_back(t);
  }
  return s;
}

double proposal_overlap_tv(const TargetDensity& target, double eta,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (eta <= 0.0)
    throw std::invalid_argument("proposal_overlap_tv: eta must be > 0");
  const double h = eta * eta / 2.0;
  double r = ((x - h * target.gradient(x)) - (y - h * target.gradient(y))).norm();
  return 2.0 * normal_cdf(r / (2.0 * eta)) - 1.0;
}

McEstimate rejection_probability(const TargetDensity& target, double eta,
                                 const Eigen::VectorXd& x, long n_mc,
                                 RandomStream& rng) {
  if (n_mc < 1)
    throw std::invalid_argument("rejection_probability: n_mc >= 1");
  const int d = target.dim();
  HmcWorkspace ws(d);
  const double fx = target.value(x);
  Eigen::VectorXd gx = target.gradient(x);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n_mc; ++i) {
    rng.fill_normal(ws.v);
    ws.v_prop.noalias() = ws.v - (0.5 * eta) * gx;
    ws.x_prop.noalias() = x + eta * ws.v_prop;
    target.gradient(ws.x_prop, ws.grad);
    ws.v_prop -= (0.5 * eta) * ws.grad;
    double delta_H = target.value(ws.x_prop) +
                     0.5 * ws.v_prop.squaredNorm() - fx -
                     0.5 * ws.v.squaredNorm();
    double rej = 1.0 - std::exp(std::min(0.0, -delta_H));
    sum += rej;
    sumsq += rej * rej;
  }
  McEstimate e;
  e.n = n_mc;
  e.value = sum / n_mc;
  double var = std::max(0.0, sumsq / n_mc - e.value * e.value);
  e.std_error = std::sqrt(var / n_mc);
  return e;
}

ChiSqTail chi_sq_tail_bound(long d, double t) {
  if (t <= 0.0) throw std::invalid_argument("chi_sq_tail_bound: t must be > 0");
  ChiSqTail r;
  r.threshold = d + 2.0 * std::sqrt(static_cast<double>(d) * t) + 2.0 * t;
  r.bound = std::exp(-t);
  return r;
}

ProductBound product_bound_check(double C, int k_terms) {
  if (C < 0.0 || C >= 1.0)
    throw std::invalid_argument("product_bound_check: need 0 <= C < 1");
  ProductBound r;
  double log_prod = 0.0;
  double pow4 = 1.0;  // 4^k
  for (int k = 0; k < k_terms; ++k) {
    log_prod -= std::exp2(k) * std::log1p(-C / pow4);
    pow4 *= 4.0;
  }
  r.partial_product = std::exp(log_prod);
  double s = std::sqrt(C);
  r.bound = (1.0 + s) / (1.0 - s);
  r.holds = r.partial_product <= r.bound;
  return r;
}

}  // namespace lshmc
