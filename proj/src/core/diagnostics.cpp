#include "core/diagnostics.hpp"

#include <random>

namespace dissipact {

namespace {

void check_match(const StructuredSystem& sys, const Trajectory& traj) {
  if (traj.dims != sys.dims() || traj.states.empty() ||
      traj.states.front().size() != sys.dims().n())
    fail(ErrorCode::TrajectoryMismatch,
         "trajectory was not produced for this system");
}

}  // namespace

DissipationReport dissipation_report(const StructuredSystem& sys,
                                     const Trajectory& traj,
                                     const InputSignal& input, double tol) {
  check_match(sys, traj);
  if (input.dim() != sys.dims().m)
    fail(ErrorCode::TrajectoryMismatch, "input dim does not match system");
  if (tol < 0.0) tol = 10.0 * std::max(traj.newton_tol, 1e-14);

  DissipationReport rep;
  rep.tolerance = tol;
  rep.unforced = true;
  const auto& d = sys.dims();
  const double tau = traj.grid.tau;
  bool monotone = true;
  for (int n = 0; n < traj.steps(); ++n) {
    const VectorXd& z_prev = traj.states[static_cast<size_t>(n)];
    const VectorXd& z_next = traj.states[static_cast<size_t>(n) + 1];
    const VectorXd u_mid = input(traj.grid.midpoint_time(n));
    if (u_mid.size() > 0 && u_mid.cwiseAbs().maxCoeff() != 0.0)
      rep.unforced = false;
    StepEquations eq(sys, z_prev, u_mid, tau, traj.scheme, traj.dg_kind);
    const VectorXd v = eq.stage_vector(z_next);
    const VectorXd y = eq.output(z_next);
    const double h_prev = sys.energy().value(z_prev.head(d.n1 + d.n2));
    const double h_next = sys.energy().value(z_next.head(d.n1 + d.n2));
    const double viol = h_next - h_prev - tau * y.dot(u_mid);
    const double balance = viol + v.dot(sys.r() * v) / tau;
    rep.per_step.push_back(viol);
    rep.max_violation = std::max(rep.max_violation, viol);
    rep.balance_max_residual =
        std::max(rep.balance_max_residual, std::abs(balance));
    if (h_next - h_prev > tol) monotone = false;
  }
  rep.monotone_when_unforced = rep.unforced && monotone;
  return rep;
}

ValidationReport structure_report(const StructuredSystem& sys) {
  return sys.validate();
}

double gradient_fd_check(const EnergyModel& model, int samples, double h,
                         unsigned long seed) {
  if (h <= 0.0) fail(ErrorCode::InvalidParams, "h must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  const int n = model.dim();
  for (int s = 0; s < samples; ++s) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = dist(rng);
    const VectorXd g = model.gradient(x);
    VectorXd xp = x;
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + h;
      const double hp = model.value(xp);
      xp[i] = x[i] - h;
      const double hm = model.value(xp);
      xp[i] = x[i];
      const double fd = (hp - hm) / (2.0 * h);
      const double err = std::abs(fd - g[i]) / (1.0 + std::abs(g[i]));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

std::vector<double> constraint_residual(const StructuredSystem& sys,
                                        const Trajectory& traj,
                                        const InputSignal& input) {
  check_match(sys, traj);
  const auto rows = sys.algebraic_rows();
  if (rows.empty())
    fail(ErrorCode::NoAlgebraicRows, "system has no purely algebraic rows");
  std::vector<double> series;
  const double tau = traj.grid.tau;
  for (int n = 0; n < traj.steps(); ++n) {
    const VectorXd u_mid = input(traj.grid.midpoint_time(n));
    StepEquations eq(sys, traj.states[static_cast<size_t>(n)], u_mid, tau,
                     traj.scheme, traj.dg_kind);
    const VectorXd res = eq.residual(traj.states[static_cast<size_t>(n) + 1]);
    double norm2 = 0.0;
    for (int i : rows) norm2 += res[i] * res[i];
    series.push_back(std::sqrt(norm2) / tau);
  }
  return series;
}

}  // namespace dissipact
