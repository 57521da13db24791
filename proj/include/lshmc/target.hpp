#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lshmc/rng.hpp"

namespace lshmc {

enum class TargetKind { gaussian_iso, gaussian_diag, hard_instance, quartic_mix };

const char* target_kind_name(TargetKind kind);

struct TargetSpec {
  TargetKind kind = TargetKind::gaussian_iso;
  int dim = 1;
  double kappa = 1.0;                // hard_instance
  Eigen::VectorXd eigenvalues;       // gaussian_diag (and optional for quartic_mix)
  double blend = 1.0;                // quartic_mix weight
  Eigen::VectorXd shift;             // optional minimizer translation
};

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Log-density f with known smoothness L and strong convexity mu, normalized so
// f(x*) = 0.  Quadratic kinds are f(t) = 1/2 t^T D t with t = x - shift;
// quartic_mix adds blend * sum_i log cosh(t_i / 2), whose per-coordinate
// Hessian lies in (0, blend/4], so L = max(lambda) + blend/4 and
// mu = min(lambda) hold in closed form.
class TargetDensity {
 public:
  int dim() const { return static_cast<int>(lambda_.size()); }
  double smoothness() const { return smoothness_; }
  double strong_convexity() const { return strong_convexity_; }
  double condition_number() const { return smoothness_ / strong_convexity_; }
  const Eigen::VectorXd& minimizer() const { return shift_; }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  TargetKind kind() const { return kind_; }
  bool is_quadratic() const { return kind_ != TargetKind::quartic_mix; }

  double value(const Eigen::VectorXd& x) const;
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(dim());
    gradient(x, g);
    return g;
  }

  // Exact draw from exp(-f); only available for the quadratic kinds.
  void sample_stationary(RandomStream& rng, Eigen::VectorXd& out) const;
  Eigen::VectorXd sample_stationary(RandomStream& rng) const {
    Eigen::VectorXd x(dim());
    sample_stationary(rng, x);
    return x;
  }

  // Same density, but with deliberately overridden constants.  Used by the
  // validation self-tests to confirm that wrong constants are caught.
  TargetDensity with_claimed_constants(double L, double mu) const;

  friend TargetDensity make_target(const TargetSpec& spec);

 private:
  TargetDensity() = default;
  TargetKind kind_ = TargetKind::gaussian_iso;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd shift_;
  double blend_ = 0.0;
  double smoothness_ = 1.0;
  double strong_convexity_ = 1.0;
};

TargetDensity make_target(const TargetSpec& spec);

// Nesterov accelerated gradient descent with step 1/L and momentum
// (sqrt(kappa)-1)/(sqrt(kappa)+1); returns x with ||grad f(x)|| <= tol.
// Throws if the iteration cap 1e4 * ceil(sqrt(kappa) * log(1/tol)) is hit.
Eigen::VectorXd find_minimizer(const TargetDensity& target,
                               const Eigen::VectorXd& start, double tol);

struct ValidationCheck {
  std::string name;
  double max_violation = 0.0;
  bool pass = true;
  Eigen::VectorXd worst_x, worst_y;  // offending probe pair, if any
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool pass = true;
};

// Probes the target's contract (gradient vs finite differences, smoothness and
// strong convexity two-point inequalities, gradient at the minimizer) on
// random pairs within radius 10/sqrt(mu) of x*.
ValidationReport validate_target(const TargetDensity& target, int n_probes,
                                 std::uint64_t seed);

}  // namespace lshmc
