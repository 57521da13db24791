#include <doctest.h>

#include <cmath>

#include "lshmc/target.hpp"

using namespace lshmc;

namespace {

TargetSpec diag_spec(std::initializer_list<double> eigs,
                     std::initializer_list<double> shift = {}) {
  TargetSpec s;
  s.kind = TargetKind::gaussian_diag;
  s.dim = static_cast<int>(eigs.size());
  s.eigenvalues = Eigen::VectorXd(s.dim);
  int i = 0;
  for (double e : eigs) s.eigenvalues[i++] = e;
  if (shift.size() != 0) {
    s.shift = Eigen::VectorXd(static_cast<int>(shift.size()));
    i = 0;
    for (double b : shift) s.shift[i++] = b;
  }
  return s;
}

}  // namespace

TEST_CASE("make_target: isotropic Gaussian has identity curvature") {
  TargetSpec s;
  s.kind = TargetKind::gaussian_iso;
  s.dim = 3;
  TargetDensity t = make_target(s);
  CHECK(t.dim() == 3);
  CHECK(t.smoothness() == 1.0);
  CHECK(t.strong_convexity() == 1.0);
  CHECK(t.condition_number() == 1.0);
  CHECK(t.minimizer().norm() == 0.0);
  Eigen::VectorXd x(3);
  x << 1.0, -2.0, 0.5;
  CHECK(t.value(x) == doctest::Approx(0.5 * x.squaredNorm()).epsilon(1e-15));
  CHECK((t.gradient(x) - x).norm() == 0.0);
}

TEST_CASE("make_target: hard instance spectrum is (kappa,...,kappa,1)") {
  TargetSpec s;
  s.kind = TargetKind::hard_instance;
  s.dim = 4;
  s.kappa = 100.0;
  TargetDensity t = make_target(s);
  CHECK(t.eigenvalues()[0] == 100.0);
  CHECK(t.eigenvalues()[1] == 100.0);
  CHECK(t.eigenvalues()[2] == 100.0);
  CHECK(t.eigenvalues()[3] == 1.0);
  CHECK(t.smoothness() == 100.0);
  CHECK(t.strong_convexity() == 1.0);
  CHECK(t.condition_number() == 100.0);
}

TEST_CASE("make_target: shifted diagonal Gaussian") {
  TargetDensity t = make_target(diag_spec({2.0, 8.0}, {1.0, -1.0}));
  CHECK(t.minimizer()[0] == 1.0);
  CHECK(t.minimizer()[1] == -1.0);
  CHECK(t.value(t.minimizer()) == 0.0);
  CHECK(t.gradient(t.minimizer()).norm() == 0.0);
  Eigen::VectorXd x(2);
  x << 3.0, 0.0;
  // 1/2 (x-b)^T D (x-b) by hand: 1/2 (2*4 + 8*1) = 8
  CHECK(t.value(x) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(t.gradient(x)[0] == doctest::Approx(4.0));
  CHECK(t.gradient(x)[1] == doctest::Approx(8.0));
}

TEST_CASE("make_target: rejected specs") {
  CHECK_THROWS_AS(make_target(diag_spec({1.0, -0.5})), InvalidSpec);
  TargetSpec zero_dim;
  zero_dim.dim = 0;
  CHECK_THROWS_AS(make_target(zero_dim), InvalidSpec);
  TargetSpec hard;
  hard.kind = TargetKind::hard_instance;
  hard.dim = 3;
  hard.kappa = 0.5;
  CHECK_THROWS_AS(make_target(hard), InvalidSpec);
  TargetSpec diag = diag_spec({1.0, 2.0});
  diag.dim = 3;  // eigenvalue count mismatch
  CHECK_THROWS_AS(make_target(diag), InvalidSpec);
  TargetSpec bad_shift = diag_spec({1.0, 2.0});
  bad_shift.shift = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(make_target(bad_shift), InvalidSpec);
}

TEST_CASE("make_target: quartic blend constants and value/gradient consistency") {
  TargetSpec s;
  s.kind = TargetKind::quartic_mix;
  s.dim = 4;
  s.blend = 2.0;
  s.eigenvalues = Eigen::VectorXd(4);
  s.eigenvalues << 1.0, 2.0, 3.0, 4.0;
  TargetDensity t = make_target(s);
  CHECK(t.smoothness() == doctest::Approx(4.0 + 2.0 / 4.0));
  CHECK(t.strong_convexity() == 1.0);
  CHECK(t.value(t.minimizer()) == 0.0);
  CHECK(t.gradient(t.minimizer()).norm() == 0.0);
  // central finite differences at a generic point
  Eigen::VectorXd x(4);
  x << 0.3, -1.2, 2.0, -0.1;
  Eigen::VectorXd g = t.gradient(x);
  for (int i = 0; i < 4; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += 1e-6;
    xm[i] -= 1e-6;
    double fd = (t.value(xp) - t.value(xm)) / 2e-6;
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("make_target is deterministic") {
  TargetSpec s = diag_spec({0.7, 3.14}, {0.1, -0.2});
  TargetDensity a = make_target(s);
  TargetDensity b = make_target(s);
  CHECK((a.eigenvalues() - b.eigenvalues()).norm() == 0.0);
  CHECK((a.minimizer() - b.minimizer()).norm() == 0.0);
  CHECK(a.smoothness() == b.smoothness());
}

TEST_CASE("find_minimizer: quadratic targets") {
  TargetSpec iso;
  iso.kind = TargetKind::gaussian_iso;
  iso.dim = 2;
  TargetDensity t = make_target(iso);
  Eigen::VectorXd start(2);
  start << 5.0, -3.0;
  CHECK(find_minimizer(t, start, 1e-10).norm() <= 1e-10);

  TargetDensity shifted = make_target(diag_spec({1.0, 1.0}, {3.0, 4.0}));
  Eigen::VectorXd xhat = find_minimizer(shifted, Eigen::VectorXd::Zero(2), 1e-9);
  CHECK((xhat - shifted.minimizer()).norm() <= 1e-8);

  TargetSpec hard;
  hard.kind = TargetKind::hard_instance;
  hard.dim = 4;
  hard.kappa = 100.0;
  TargetDensity h = make_target(hard);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
  Eigen::VectorXd m = find_minimizer(h, ones, 1e-8);
  CHECK(m.norm() <= 1e-8);  // lambda_i >= 1 so |x| <= |grad f|
}

TEST_CASE("find_minimizer: start invariance and bad tol") {
  TargetSpec s;
  s.kind = TargetKind::quartic_mix;
  s.dim = 3;
  s.blend = 1.0;
  s.shift = Eigen::VectorXd(3);
  s.shift << 1.0, -2.0, 0.5;
  TargetDensity t = make_target(s);
  Eigen::VectorXd a = find_minimizer(t, Eigen::VectorXd::Zero(3), 1e-9);
  Eigen::VectorXd b = find_minimizer(t, 10.0 * Eigen::VectorXd::Ones(3), 1e-9);
  CHECK(t.gradient(a).norm() <= 1e-9);
  CHECK(t.gradient(b).norm() <= 1e-9);
  CHECK((a - b).norm() <= 1e-7);
  CHECK_THROWS_AS(find_minimizer(t, a, 0.0), std::invalid_argument);
}

TEST_CASE("validate_target: exact quadratics pass cleanly") {
  TargetSpec s;
  s.kind = TargetKind::gaussian_iso;
  s.dim = 2;
  ValidationReport r = validate_target(make_target(s), 100, 7);
  CHECK(r.pass);
  for (const auto& c : r.checks) CHECK(c.pass);
}

TEST_CASE("validate_target: quartic target satisfies its claimed constants") {
  TargetSpec s;
  s.kind = TargetKind::quartic_mix;
  s.dim = 4;
  s.blend = 3.0;
  ValidationReport r = validate_target(make_target(s), 1000, 11);
  CHECK(r.pass);
}

TEST_CASE("validate_target: deliberately wrong constants are caught") {
  TargetDensity t = make_target(diag_spec({1.0, 9.0}));
  ValidationReport wrong_L =
      validate_target(t.with_claimed_constants(4.5, 1.0), 1000, 3);
  bool smooth_failed = false;
  for (const auto& c : wrong_L.checks)
    if (c.name == "smoothness" && !c.pass) smooth_failed = true;
  CHECK(smooth_failed);

  ValidationReport wrong_mu =
      validate_target(t.with_claimed_constants(9.0, 3.0), 1000, 3);
  bool convexity_failed = false;
  for (const auto& c : wrong_mu.checks)
    if (c.name == "strong_convexity" && !c.pass) convexity_failed = true;
  CHECK(convexity_failed);
}

TEST_CASE("validate_target: bad probe count rejected") {
  TargetSpec s;
  s.kind = TargetKind::gaussian_iso;
  s.dim = 1;
  CHECK_THROWS_AS(validate_target(make_target(s), 0, 0), std::invalid_argument);
}

TEST_CASE("sample_stationary: quadratic only, correct moments") {
  TargetDensity t = make_target(diag_spec({4.0, 0.25}, {2.0, -1.0}));
  RandomStream rng(123);
  long n = 50000;
  Eigen::VectorXd x(2), mean = Eigen::VectorXd::Zero(2),
                  m2 = Eigen::VectorXd::Zero(2);
  for (long i = 0; i < n; ++i) {
    t.sample_stationary(rng, x);
    mean += x;
    m2.array() += (x - t.minimizer()).array().square();
  }
  mean /= n;
  m2 /= n;
  CHECK((mean - t.minimizer()).norm() < 0.05);
  CHECK(m2[0] == doctest::Approx(1.0 / 4.0).epsilon(0.05));
  CHECK(m2[1] == doctest::Approx(4.0).epsilon(0.05));

  TargetSpec q;
  q.kind = TargetKind::quartic_mix;
  q.dim = 2;
  RandomStream r2(1);
  Eigen::VectorXd out(2);
  CHECK_THROWS_AS(make_target(q).sample_stationary(r2, out), std::logic_error);
}
