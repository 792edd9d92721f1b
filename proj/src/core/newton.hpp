#pragma once

#include <Eigen/Dense>
#include <functional>

#include "core/errors.hpp"

namespace dissipact {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Damping { None, Backtracking };
enum class JacobianMode { Analytic, FiniteDifference };

struct SolverOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iters = 25;
  Damping damping = Damping::Backtracking;
  JacobianMode jacobian = JacobianMode::Analytic;

  void check() const {
    if (abs_tol <= 0.0 || rel_tol < 0.0)
      fail(ErrorCode::InvalidParams, "solver tolerances must be positive");
    if (max_iters < 1)
      fail(ErrorCode::InvalidParams, "max_iters must be at least 1");
  }

  bool operator==(const SolverOptions&) const = default;
};

struct NewtonResult {
  VectorXd x;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Damped Newton iteration for F(x) = 0. Stops when
/// ||F(x)|| <= abs_tol + rel_tol * ||F(x0)||. With backtracking, the step is
/// halved up to 20 times whenever the residual norm fails to decrease.
/// Throws NewtonDivergence when the tolerance is not met within max_iters and
/// SingularJacobian when the linear solve breaks down.
NewtonResult newton_solve(
    const std::function<VectorXd(const VectorXd&)>& residual_fn,
    const std::function<MatrixXd(const VectorXd&)>& jacobian_fn,
    const VectorXd& x0, const SolverOptions& opts);

/// Forward-difference Jacobian with h = 1e-7 * (1 + |x_i|) per column.
MatrixXd forward_difference_jacobian(
    const std::function<VectorXd(const VectorXd&)>& residual_fn,
    const VectorXd& x, const VectorXd& fx);

}  // namespace dissipact
