#include "core/integrator.hpp"

#include <cmath>

namespace dissipact {

StepEquations::StepEquations(const StructuredSystem& sys, VectorXd z_n,
                             VectorXd u_mid, double tau, Scheme scheme,
                             DiscreteGradientKind kind)
    : sys_(sys),
      z_n_(std::move(z_n)),
      u_mid_(std::move(u_mid)),
      tau_(tau),
      scheme_(scheme),
      kind_(kind) {
  if (z_n_.size() != sys.dims().n())
    fail(ErrorCode::DimensionMismatch, "step state does not match system");
  if (u_mid_.size() != sys.dims().m)
    fail(ErrorCode::DimensionMismatch, "step input does not match system");
  if (tau_ <= 0.0) fail(ErrorCode::InvalidValue, "tau must be positive");
}

// For affine-gradient energies the Gonzalez correction vanishes identically,
// so every scheme/kind combination reduces to one linear solve.
bool StepEquations::linear() const { return sys_.energy().affine_gradient(); }

VectorXd StepEquations::stage_gradient(const VectorXd& z_next) const {
  const int n12 = sys_.dims().n1 + sys_.dims().n2;
  const VectorXd x_n = z_n_.head(n12);
  const VectorXd x_p = z_next.head(n12);
  if (scheme_ == Scheme::Midpoint)
    return sys_.energy().gradient(0.5 * (x_n + x_p));
  return discrete_gradient(sys_.energy(), x_n, x_p, kind_);
}

VectorXd StepEquations::stage_vector(const VectorXd& z_next) const {
  const auto& d = sys_.dims();
  const VectorXd g = stage_gradient(z_next);
  VectorXd v(d.n());
  v.head(d.n1) = z_next.head(d.n1) - z_n_.head(d.n1);
  v.segment(d.n1, d.n2) = tau_ * g.tail(d.n2);
  v.tail(d.n3) = 0.5 * tau_ * (z_n_.tail(d.n3) + z_next.tail(d.n3));
  return v;
}

VectorXd StepEquations::residual(const VectorXd& z_next) const {
  const auto& d = sys_.dims();
  const VectorXd g = stage_gradient(z_next);
  VectorXd lhs(d.n());
  lhs.head(d.n1) = tau_ * g.head(d.n1);
  lhs.segment(d.n1, d.n2) =
      z_next.segment(d.n1, d.n2) - z_n_.segment(d.n1, d.n2);
  lhs.tail(d.n3).setZero();
  return lhs - sys_.jr() * stage_vector(z_next) - tau_ * (sys_.b() * u_mid_);
}

MatrixXd StepEquations::jacobian(const VectorXd& z_next) const {
  const auto& d = sys_.dims();
  const int n = d.n();
  const int n12 = d.n1 + d.n2;
  const VectorXd x_n = z_n_.head(n12);
  const VectorXd x_p = z_next.head(n12);
  MatrixXd dg;  // stage gradient sensitivity wrt z_next's (z1,z2) part
  if (scheme_ == Scheme::Midpoint)
    dg = 0.5 * sys_.energy().hessian(0.5 * (x_n + x_p));
  else
    dg = discrete_gradient_jacobian(sys_.energy(), x_n, x_p, kind_);

  MatrixXd jac = MatrixXd::Zero(n, n);
  jac.block(0, 0, d.n1, n12) = tau_ * dg.topRows(d.n1);
  jac.block(d.n1, d.n1, d.n2, d.n2) += MatrixXd::Identity(d.n2, d.n2);

  MatrixXd dv = MatrixXd::Zero(n, n);
  dv.block(0, 0, d.n1, d.n1) = MatrixXd::Identity(d.n1, d.n1);
  dv.block(d.n1, 0, d.n2, n12) = tau_ * dg.bottomRows(d.n2);
  dv.block(n12, n12, d.n3, d.n3) =
      0.5 * tau_ * MatrixXd::Identity(d.n3, d.n3);
  jac -= sys_.jr() * dv;
  return jac;
}

VectorXd StepEquations::output(const VectorXd& z_next) const {
  return sys_.b().transpose() * stage_vector(z_next) / tau_;
}

namespace {

StepResult solve_step(const StructuredSystem& sys, const StatePartition& z_n,
                      const VectorXd& u_mid, double tau, Scheme scheme,
                      DiscreteGradientKind kind, const SolverOptions& opts) {
  if (z_n.dims != sys.dims())
    fail(ErrorCode::DimensionMismatch, "state dims do not match system");
  StepEquations eq(sys, z_n.z, u_mid, tau, scheme, kind);

  SolverOptions local = opts;
  local.abs_tol = opts.abs_tol * (1.0 + z_n.z.norm());

  std::function<MatrixXd(const VectorXd&)> jac_fn;
  if (opts.jacobian == JacobianMode::Analytic && sys.energy().has_hessian())
    jac_fn = [&eq](const VectorXd& x) { return eq.jacobian(x); };

  NewtonResult nr = newton_solve(
      [&eq](const VectorXd& x) { return eq.residual(x); }, jac_fn, z_n.z,
      local);

  StepResult sr;
  sr.y_mid = eq.output(nr.x);
  sr.z_next = std::move(nr.x);
  sr.iterations = nr.iterations;
  sr.tol_used = local.abs_tol;
  return sr;
}

}  // namespace

StepResult step_midpoint(const StructuredSystem& sys, const StatePartition& z_n,
                         const VectorXd& u_mid, double tau,
                         const SolverOptions& opts) {
  return solve_step(sys, z_n, u_mid, tau, Scheme::Midpoint,
                    DiscreteGradientKind::GonzalezMidpoint, opts);
}

StepResult step_discrete_gradient(const StructuredSystem& sys,
                                  const StatePartition& z_n,
                                  const VectorXd& u_mid, double tau,
                                  DiscreteGradientKind kind,
                                  const SolverOptions& opts) {
  return solve_step(sys, z_n, u_mid, tau, Scheme::DiscreteGradient, kind,
                    opts);
}

VectorXd algebraic_residual(const StructuredSystem& sys,
                            const StatePartition& z, const VectorXd& u,
                            const std::vector<int>& rows) {
  const auto& d = sys.dims();
  const VectorXd g = sys.energy().gradient(z.x12());
  VectorXd effort(d.n2 + d.n3);
  effort.head(d.n2) = g.tail(d.n2);
  effort.tail(d.n3) = z.z3();
  const MatrixXd s = sys.jr();
  const VectorXd bu = sys.b() * u;
  VectorXd rho(static_cast<Eigen::Index>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) {
    const int i = rows[k];
    const double lhs = i < d.n1 ? g[i] : 0.0;
    rho[static_cast<Eigen::Index>(k)] =
        lhs - s.row(i).tail(d.n2 + d.n3).dot(effort) - bu[i];
  }
  return rho;
}

StatePartition consistent_initialization(const StructuredSystem& sys,
                                         const StatePartition& z_guess,
                                         const VectorXd& u0,
                                         const SolverOptions& opts) {
  if (z_guess.dims != sys.dims())
    fail(ErrorCode::DimensionMismatch, "state dims do not match system");
  const auto rows = sys.algebraic_rows();
  if (rows.empty()) return z_guess;

  const auto& d = sys.dims();
  const double tol = opts.abs_tol * (1.0 + z_guess.z.norm());

  auto rho_of = [&](const VectorXd& z) {
    return algebraic_residual(sys, sys.make_state(z), u0, rows);
  };
  if (rho_of(z_guess.z).norm() <= tol) return z_guess;

  auto gauss_newton = [&](const std::vector<int>& unknowns,
                          VectorXd z) -> std::pair<bool, VectorXd> {
    const auto k = static_cast<Eigen::Index>(unknowns.size());
    if (k == 0) return {false, z};
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      const VectorXd rho = rho_of(z);
      if (rho.norm() <= tol) return {true, z};
      MatrixXd jac(rho.size(), k);
      VectorXd zp = z;
      for (Eigen::Index c = 0; c < k; ++c) {
        const int j = unknowns[static_cast<size_t>(c)];
        const double h = 1e-7 * (1.0 + std::abs(z[j]));
        zp[j] = z[j] + h;
        jac.col(c) = (rho_of(zp) - rho) / h;
        zp[j] = z[j];
      }
      const VectorXd delta = jac.colPivHouseholderQr().solve(-rho);
      if (!delta.allFinite() || delta.norm() == 0.0) break;
      for (Eigen::Index c = 0; c < k; ++c)
        z[unknowns[static_cast<size_t>(c)]] += delta[c];
    }
    return {rho_of(z).norm() <= tol, z};
  };

  std::vector<int> z3_idx;
  for (int i = d.n1 + d.n2; i < d.n(); ++i) z3_idx.push_back(i);
  auto [ok, z] = gauss_newton(z3_idx, z_guess.z);
  if (!ok) {
    std::vector<int> wide = z3_idx;
    for (int i = 0; i < d.n1; ++i) wide.push_back(i);
    std::tie(ok, z) = gauss_newton(wide, z_guess.z);
  }
  if (!ok)
    fail(ErrorCode::InconsistentInitialData,
         "algebraic rows cannot be satisfied from the given initial guess");
  return sys.make_state(std::move(z));
}

Trajectory integrate(const StructuredSystem& sys, const StatePartition& z0,
                     const InputSignal& input, const TimeGrid& grid,
                     Scheme scheme, const SolverOptions& opts,
                     DiscreteGradientKind kind,
                     const std::function<void(int, int)>& progress) {
  grid.check();
  opts.check();
  if (z0.dims != sys.dims())
    fail(ErrorCode::DimensionMismatch, "initial state does not match system");
  if (input.dim() != sys.dims().m)
    fail(ErrorCode::DimensionMismatch, "input signal does not match system");
  if (kind == DiscreteGradientKind::AnalyticQuadratic &&
      !sys.energy().affine_gradient())
    fail(ErrorCode::IllegalKind,
         "AnalyticQuadratic discrete gradient requires a quadratic energy");

  {
    const auto rows = sys.algebraic_rows();
    if (!rows.empty()) {
      const VectorXd rho =
          algebraic_residual(sys, z0, input(grid.t0), rows);
      if (rho.norm() > 1e-6 * (1.0 + z0.z.norm()))
        fail(ErrorCode::InconsistentInitialData,
             "initial state violates the algebraic rows; run "
             "consistent_initialization first");
    }
  }

  const int nsteps = grid.steps();
  const auto& d = sys.dims();

  Trajectory traj;
  traj.grid = grid;
  traj.scheme = scheme;
  traj.dg_kind = kind;
  traj.dims = d;
  traj.states.reserve(static_cast<size_t>(nsteps) + 1);
  traj.states.push_back(z0.z);
  traj.energies.push_back(sys.energy().value(z0.x12()));

  const bool linear_path =
      sys.energy().affine_gradient() &&
      (scheme == Scheme::Midpoint ||
       kind == DiscreteGradientKind::AnalyticQuadratic);
  Eigen::FullPivLU<MatrixXd> lu;
  if (linear_path) {
    StepEquations eq(sys, z0.z, VectorXd::Zero(d.m), grid.tau, scheme, kind);
    lu.compute(eq.jacobian(z0.z));
    if (!lu.isInvertible())
      fail(ErrorCode::SingularJacobian,
           "singular stage matrix; the DAE pencil is not regular at this tau");
  }

  VectorXd z = z0.z;
  for (int n = 0; n < nsteps; ++n) {
    const VectorXd u_mid = input(grid.midpoint_time(n));
    VectorXd z_next;
    VectorXd y_mid;
    int iters = 0;
    double tol_used = opts.abs_tol * (1.0 + z.norm());
    try {
      if (linear_path) {
        StepEquations eq(sys, z, u_mid, grid.tau, scheme, kind);
        z_next = z - lu.solve(eq.residual(z));
        y_mid = eq.output(z_next);
        iters = 1;
      } else {
        StepResult sr = solve_step(sys, sys.make_state(z), u_mid, grid.tau,
                                   scheme, kind, opts);
        z_next = std::move(sr.z_next);
        y_mid = std::move(sr.y_mid);
        iters = sr.iterations;
        tol_used = sr.tol_used;
      }
    } catch (const Error& err) {
      fail(err.code(), "step " + std::to_string(n) + " failed: " + err.what());
    }

    StepEquations eq(sys, z, u_mid, grid.tau, scheme, kind);
    const VectorXd v = eq.stage_vector(z_next);
    const double h_prev = traj.energies.back();
    const double h_next =
        sys.energy().value(z_next.head(d.n1 + d.n2));
    const double balance = h_next - h_prev - grid.tau * y_mid.dot(u_mid) +
                           v.dot(sys.r() * v) / grid.tau;

    traj.states.push_back(z_next);
    traj.outputs.push_back(std::move(y_mid));
    traj.energies.push_back(h_next);
    traj.balance_residuals.push_back(balance);
    traj.newton_iterations.push_back(iters);
    traj.newton_tol = std::max(traj.newton_tol, tol_used);
    z = std::move(z_next);
    if (progress) progress(n + 1, nsteps);
  }
  return traj;
}

}  // namespace dissipact
