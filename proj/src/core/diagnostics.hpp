#pragma once

#include "core/integrator.hpp"

namespace dissipact {

struct DissipationReport {
  double max_violation = 0.0;       // max over n of H^{n+1}-H^n - tau <y,u>
  bool monotone_when_unforced = false;
  double balance_max_residual = 0.0;
  std::vector<double> per_step;     // per-step violation series
  bool unforced = false;            // input vanished at every midpoint
  double tolerance = 0.0;           // bound the flags were evaluated against
};

/// Re-evaluates the discrete dissipation inequality and the power-balance
/// identity on a computed trajectory. tol < 0 selects 10x the trajectory's
/// Newton tolerance.
DissipationReport dissipation_report(const StructuredSystem& sys,
                                     const Trajectory& traj,
                                     const InputSignal& input,
                                     double tol = -1.0);

/// CLI-facing alias of StructuredSystem::validate.
ValidationReport structure_report(const StructuredSystem& sys);

/// Worst relative error between the analytic gradient and a central
/// difference at seeded pseudo-random points in [-1, 1]^n.
double gradient_fd_check(const EnergyModel& model, int samples, double h,
                         unsigned long seed);

/// Per-step norms of the algebraic-row residual at stage (midpoint) values.
std::vector<double> constraint_residual(const StructuredSystem& sys,
                                        const Trajectory& traj,
                                        const InputSignal& input);

}  // namespace dissipact
