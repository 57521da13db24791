#include "lshmc/target.hpp"

#include <cmath>

namespace lshmc {

namespace {

// log cosh(t/2), evaluated without overflow for large |t|.
inline double log_cosh_half(double t) {
  double a = 0.5 * std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

inline double d_log_cosh_half(double t) { return 0.5 * std::tanh(0.5 * t); }

}  // namespace

const char* target_kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::gaussian_iso: return "gaussian-iso";
    case TargetKind::gaussian_diag: return "gaussian-diag";
    case TargetKind::hard_instance: return "hard";
    case TargetKind::quartic_mix: return "quartic";
  }
  return "?";
}

double TargetDensity::value(const Eigen::VectorXd& x) const {
  double f = 0.0;
  for (int i = 0; i < dim(); ++i) {
    double t = x[i] - shift_[i];
    f += 0.5 * lambda_[i] * t * t;
    if (blend_ != 0.0) f += blend_ * log_cosh_half(t);
  }
  return f;
}

void TargetDensity::gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  out.resize(dim());
  if (blend_ == 0.0) {
    out.array() = lambda_.array() * (x - shift_).array();
    return;
  }
  for (int i = 0; i < dim(); ++i) {
    double t = x[i] - shift_[i];
    out[i] = lambda_[i] * t + blend_ * d_log_cosh_half(t);
  }
}

void TargetDensity::sample_stationary(RandomStream& rng, Eigen::VectorXd& out) const {
  if (!is_quadratic())
    throw std::logic_error("sample_stationary: no exact sampler for quartic_mix");
  out.resize(dim());
  for (int i = 0; i < dim(); ++i)
    out[i] = shift_[i] + rng.normal() / std::sqrt(lambda_[i]);
}

TargetDensity TargetDensity::with_claimed_constants(double L, double mu) const {
  TargetDensity t = *this;
  t.smoothness_ = L;
  t.strong_convexity_ = mu;
  return t;
}

TargetDensity make_target(const TargetSpec& spec) {
  if (spec.dim < 1) throw InvalidSpec("target dim must be >= 1");
  TargetDensity t;
  t.kind_ = spec.kind;
  switch (spec.kind) {
    case TargetKind::gaussian_iso:
      t.lambda_ = Eigen::VectorXd::Ones(spec.dim);
      break;
    case TargetKind::gaussian_diag:
      if (spec.eigenvalues.size() != spec.dim)
        throw InvalidSpec("gaussian_diag: need one eigenvalue per dimension");
      t.lambda_ = spec.eigenvalues;
      break;
    case TargetKind::hard_instance:
      if (spec.kappa < 1.0) throw InvalidSpec("hard_instance: kappa must be >= 1");
      t.lambda_ = Eigen::VectorXd::Constant(spec.dim, spec.kappa);
      t.lambda_[spec.dim - 1] = 1.0;
      break;
    case TargetKind::quartic_mix:
      if (spec.blend < 0.0) throw InvalidSpec("quartic_mix: blend must be >= 0");
      t.lambda_ = spec.eigenvalues.size() == spec.dim
                      ? spec.eigenvalues
                      : Eigen::VectorXd::Ones(spec.dim);
      t.blend_ = spec.blend;
      break;
  }
  if ((t.lambda_.array() <= 0.0).any())
    throw InvalidSpec("eigenvalues must be strictly positive");
  t.shift_ = spec.shift.size() == spec.dim ? spec.shift
                                           : Eigen::VectorXd::Zero(spec.dim);
  if (spec.shift.size() != 0 && spec.shift.size() != spec.dim)
    throw InvalidSpec("shift length must match dim");
  t.smoothness_ = t.lambda_.maxCoeff() + t.blend_ / 4.0;
  t.strong_convexity_ = t.lambda_.minCoeff();
  return t;
}

Eigen::VectorXd find_minimizer(const TargetDensity& target,
                               const Eigen::VectorXd& start, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("find_minimizer: tol must be > 0");
  const double L = target.smoothness();
  const double kappa = target.condition_number();
  const double sk = std::sqrt(kappa);
  const double momentum = (sk - 1.0) / (sk + 1.0);
  const long cap = static_cast<long>(
      1e4 * std::ceil(sk * std::max(1.0, std::log(1.0 / tol))));

  Eigen::VectorXd x = start, y = start, x_prev = start, g(target.dim());
  for (long it = 0; it < cap; ++it) {
    target.gradient(x, g);
    if (g.norm() <= tol) return x;
    target.gradient(y, g);
    x_prev.swap(x);
    x = y - g / L;
    y = x + momentum * (x - x_prev);
  }
  target.gradient(x, g);
  if (g.norm() <= tol) return x;
  throw std::runtime_error("find_minimizer: iteration cap " +
                           std::to_string(cap) + " exceeded, |grad| = " +
                           std::to_string(g.norm()));
}

ValidationReport validate_target(const TargetDensity& target, int n_probes,
                                 std::uint64_t seed) {
  if (n_probes < 1) throw std::invalid_argument("validate_target: n_probes >= 1");
  const int d = target.dim();
  const double L = target.smoothness();
  const double mu = target.strong_convexity();
  const double radius = 10.0 / std::sqrt(mu);
  RandomStream rng(seed);

  ValidationCheck grad_min{"grad_at_minimizer"};
  ValidationCheck fd{"gradient_finite_difference"};
  ValidationCheck smooth{"smoothness"};
  ValidationCheck strong{"strong_convexity"};

  grad_min.max_violation =
      target.gradient(target.minimizer()).norm() -
      1e-8 * std::sqrt(L * d);
  grad_min.pass = grad_min.max_violation <= 0.0;

  Eigen::VectorXd x(d), y(d), gx(d), gy(d);
  for (int probe = 0; probe < n_probes; ++probe) {
    for (int i = 0; i < d; ++i) {
      x[i] = target.minimizer()[i] + radius * (2.0 * rng.uniform() - 1.0);
      y[i] = target.minimizer()[i] + radius * (2.0 * rng.uniform() - 1.0);
    }
    target.gradient(x, gx);
    target.gradient(y, gy);

    // Central finite differences along one random coordinate per probe.
    {
      int i = static_cast<int>(rng.uniform_index(d));
      double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      double fdg = (target.value(xp) - target.value(xm)) / (2.0 * h);
      double scale = std::max(1.0, std::abs(gx[i]));
      double viol = std::abs(fdg - gx[i]) / scale - 1e-5;
      if (viol > fd.max_violation) {
        fd.max_violation = viol;
        fd.worst_x = x;
      }
    }

    double dist = (x - y).norm();
    double grad_dist = (gx - gy).norm();
    double sviol = grad_dist - L * dist - 1e-9 * L * dist;
    if (sviol > smooth.max_violation) {
      smooth.max_violation = sviol;
      smooth.worst_x = x;
      smooth.worst_y = y;
    }

    double gap = target.value(y) - target.value(x) - gx.dot(y - x) -
                 0.5 * mu * dist * dist;
    double cviol = -gap - 1e-9 * (1.0 + std::abs(target.value(x)));
    if (cviol > strong.max_violation) {
      strong.max_violation = cviol;
      strong.worst_x = x;
      strong.worst_y = y;
    }
  }
  fd.pass = fd.max_violation <= 0.0;
  smooth.pass = smooth.max_violation <= 0.0;
  strong.pass = strong.max_violation <= 0.0;

  ValidationReport report;
  report.checks = {grad_min, fd, smooth, strong};
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

}  // namespace lshmc
