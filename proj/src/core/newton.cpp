#include "core/newton.hpp"

#include <cmath>
#include <cstdio>

namespace dissipact {

MatrixXd forward_difference_jacobian(
    const std::function<VectorXd(const VectorXd&)>& residual_fn,
    const VectorXd& x, const VectorXd& fx) {
  const auto n = x.size();
  MatrixXd jac(fx.size(), n);
  VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = 1e-7 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    jac.col(i) = (residual_fn(xp) - fx) / h;
    xp[i] = x[i];
  }
  return jac;
}

NewtonResult newton_solve(
    const std::function<VectorXd(const VectorXd&)>& residual_fn,
    const std::function<MatrixXd(const VectorXd&)>& jacobian_fn,
    const VectorXd& x0, const SolverOptions& opts) {
  opts.check();
  VectorXd x = x0;
  VectorXd fx = residual_fn(x);
  double fnorm = fx.norm();
  const double target = opts.abs_tol + opts.rel_tol * fnorm;
  NewtonResult res;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (fnorm <= target) {
      res.x = std::move(x);
      res.iterations = iter;
      res.residual_norm = fnorm;
      return res;
    }
    MatrixXd jac;
    if (jacobian_fn && opts.jacobian == JacobianMode::Analytic)
      jac = jacobian_fn(x);
    else
      jac = forward_difference_jacobian(residual_fn, x, fx);

    Eigen::FullPivLU<MatrixXd> lu(jac);
    if (!lu.isInvertible())
      fail(ErrorCode::SingularJacobian,
           "singular iteration matrix at Newton step " + std::to_string(iter));
    const VectorXd dx = lu.solve(-fx);
    if (!dx.allFinite())
      fail(ErrorCode::SingularJacobian, "non-finite Newton update");

    double alpha = 1.0;
    VectorXd x_new = x + dx;
    VectorXd f_new = residual_fn(x_new);
    double fnorm_new = f_new.norm();
    if (opts.damping == Damping::Backtracking) {
      for (int cut = 0; cut < 20 && !(fnorm_new < fnorm) &&
                        fnorm_new > target;
           ++cut) {
        alpha *= 0.5;
        x_new = x + alpha * dx;
        f_new = residual_fn(x_new);
        fnorm_new = f_new.norm();
      }
    }
    x = std::move(x_new);
    fx = std::move(f_new);
    fnorm = fnorm_new;
  }
  if (fnorm <= target) {
    res.x = std::move(x);
    res.iterations = opts.max_iters;
    res.residual_norm = fnorm;
    return res;
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "Newton did not reach tolerance %g within %d iterations "
                "(residual %g)",
                target, opts.max_iters, fnorm);
  fail(ErrorCode::NewtonDivergence, msg);
}

}  // namespace dissipact
