#include <doctest.h>

#include <cmath>

#include "core/newton.hpp"

using namespace dissipact;

TEST_CASE("newton solves a scalar nonlinear equation quadratically") {
  auto f = [](const VectorXd& x) {
    VectorXd r(1);
    r[0] = std::cos(x[0]) - x[0];
    return r;
  };
  auto jf = [](const VectorXd& x) {
    MatrixXd j(1, 1);
    j(0, 0) = -std::sin(x[0]) - 1.0;
    return j;
  };
  SolverOptions opts;
  const auto res = newton_solve(f, jf, VectorXd::Ones(1), opts);
  CHECK(std::abs(res.x[0] - 0.7390851332151607) < 1e-12);
  CHECK(res.iterations <= 6);
  CHECK(res.residual_norm <= opts.abs_tol + opts.rel_tol * std::abs(f(VectorXd::Ones(1))[0]));
}

TEST_CASE("backtracking rescues a bad initial guess") {
  // f(x) = atan(x); undamped Newton diverges from |x0| > ~1.39
  auto f = [](const VectorXd& x) {
    VectorXd r(1);
    r[0] = std::atan(x[0]);
    return r;
  };
  auto jf = [](const VectorXd& x) {
    MatrixXd j(1, 1);
    j(0, 0) = 1.0 / (1.0 + x[0] * x[0]);
    return j;
  };
  VectorXd x0(1);
  x0 << 3.0;
  SolverOptions opts;
  opts.max_iters = 50;
  const auto res = newton_solve(f, jf, x0, opts);
  CHECK(std::abs(res.x[0]) < 1e-10);

  opts.damping = Damping::None;
  opts.max_iters = 10;
  CHECK_THROWS_AS(newton_solve(f, jf, x0, opts), Error);
}

TEST_CASE("singular jacobian is reported as such") {
  auto f = [](const VectorXd& x) {
    VectorXd r(2);
    r[0] = x[0] + x[1] - 1.0;
    r[1] = 2.0 * x[0] + 2.0 * x[1];
    return r;
  };
  auto jf = [](const VectorXd&) {
    MatrixXd j(2, 2);
    j << 1.0, 1.0, 2.0, 2.0;
    return j;
  };
  try {
    newton_solve(f, jf, VectorXd::Zero(2), SolverOptions{});
    FAIL("expected SingularJacobian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularJacobian);
  }
}

TEST_CASE("forward difference jacobian approximates the analytic one") {
  auto f = [](const VectorXd& x) {
    VectorXd r(2);
    r[0] = x[0] * x[0] + x[1];
    r[1] = std::sin(x[0]) * x[1];
    return r;
  };
  VectorXd x(2);
  x << 0.7, -1.2;
  const MatrixXd j = forward_difference_jacobian(f, x, f(x));
  MatrixXd want(2, 2);
  want << 2.0 * x[0], 1.0, std::cos(x[0]) * x[1], std::sin(x[0]);
  CHECK((j - want).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("solver options are validated") {
  SolverOptions opts;
  opts.abs_tol = 0.0;
  CHECK_THROWS_AS(opts.check(), Error);
  opts = SolverOptions{};
  opts.max_iters = 0;
  CHECK_THROWS_AS(opts.check(), Error);
}
