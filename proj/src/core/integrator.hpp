#pragma once

#include <functional>
#include <vector>

#include "core/newton.hpp"
#include "core/signal.hpp"
#include "core/system.hpp"

namespace dissipact {

enum class Scheme { Midpoint, DiscreteGradient };

struct TimeGrid {
  double t0 = 0.0;
  double t_end = 1.0;
  double tau = 0.01;

  void check() const {
    if (tau <= 0.0) fail(ErrorCode::InvalidValue, "tau must be positive");
    if (t_end <= t0) fail(ErrorCode::InvalidValue, "t_end must exceed t0");
  }

  int steps() const {
    check();
    return std::max(1, static_cast<int>(std::llround((t_end - t0) / tau)));
  }

  double time(int n) const { return t0 + n * tau; }
  double midpoint_time(int n) const { return t0 + (n + 0.5) * tau; }

  bool operator==(const TimeGrid&) const = default;
};

struct Trajectory {
  TimeGrid grid;
  Scheme scheme = Scheme::Midpoint;
  DiscreteGradientKind dg_kind = DiscreteGradientKind::GonzalezMidpoint;
  SystemDims dims;
  std::vector<VectorXd> states;        // z^0 .. z^N
  std::vector<VectorXd> outputs;       // y^{n+1/2}, N entries
  std::vector<double> energies;        // H(z^n), N+1 entries
  std::vector<double> balance_residuals;  // per-step power balance defect
  std::vector<int> newton_iterations;
  double newton_tol = 0.0;  // largest per-step absolute tolerance used

  int steps() const { return static_cast<int>(outputs.size()); }
};

struct StepResult {
  VectorXd z_next;
  VectorXd y_mid;
  int iterations = 0;
  double tol_used = 0.0;
};

/// One-step nonlinear stage equations shared by both schemes; exposes the
/// stage vector v = [z1'-z1; tau*g2; tau*(z3+z3')/2] used by diagnostics.
class StepEquations {
 public:
  StepEquations(const StructuredSystem& sys, VectorXd z_n, VectorXd u_mid,
                double tau, Scheme scheme, DiscreteGradientKind kind);

  VectorXd stage_gradient(const VectorXd& z_next) const;
  VectorXd stage_vector(const VectorXd& z_next) const;
  VectorXd residual(const VectorXd& z_next) const;
  MatrixXd jacobian(const VectorXd& z_next) const;
  VectorXd output(const VectorXd& z_next) const;  // y^{n+1/2}

  bool linear() const;  // constant Jacobian, one solve suffices

 private:
  const StructuredSystem& sys_;
  VectorXd z_n_, u_mid_;
  double tau_;
  Scheme scheme_;
  DiscreteGradientKind kind_;
};

StepResult step_midpoint(const StructuredSystem& sys, const StatePartition& z_n,
                         const VectorXd& u_mid, double tau,
                         const SolverOptions& opts);

StepResult step_discrete_gradient(const StructuredSystem& sys,
                                  const StatePartition& z_n,
                                  const VectorXd& u_mid, double tau,
                                  DiscreteGradientKind kind,
                                  const SolverOptions& opts);

/// Runs the one-step map over the grid, sampling u at interval midpoints.
/// Affine-gradient energies are stepped by one pre-factorized linear solve
/// per step. progress, when set, is called after each completed step.
Trajectory integrate(
    const StructuredSystem& sys, const StatePartition& z0,
    const InputSignal& input, const TimeGrid& grid, Scheme scheme,
    const SolverOptions& opts = {},
    DiscreteGradientKind kind = DiscreteGradientKind::GonzalezMidpoint,
    const std::function<void(int, int)>& progress = nullptr);

/// Satisfies the purely algebraic rows of the continuous model at t0.
/// Keeps z2 fixed; first adjusts z3 only, widening to z1 when needed, via
/// Gauss-Newton least squares. Returns z_guess unchanged when consistent.
StatePartition consistent_initialization(const StructuredSystem& sys,
                                         const StatePartition& z_guess,
                                         const VectorXd& u0,
                                         const SolverOptions& opts = {});

/// Residual of the algebraic rows at a given state (time-derivative terms
/// carry zero coefficients on these rows by construction).
VectorXd algebraic_residual(const StructuredSystem& sys,
                            const StatePartition& z, const VectorXd& u,
                            const std::vector<int>& rows);

}  // namespace dissipact
