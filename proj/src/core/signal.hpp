#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "core/errors.hpp"

namespace dissipact {

using Eigen::VectorXd;

enum class SignalKind { Zero, Constant, Sinusoid, PiecewiseLinear, Custom };

/// Time-parameterized input u(t) in R^m. Zero, constant, per-channel
/// sinusoids, sampled piecewise-linear data, or an arbitrary callback.
class InputSignal {
 public:
  InputSignal() : kind_(SignalKind::Zero), m_(0) {}

  static InputSignal zero(int m);
  static InputSignal constant(VectorXd value);
  /// Channel i is amplitude[i] * sin(omega[i] * t + phase[i]).
  static InputSignal sinusoid(VectorXd amplitude, VectorXd omega,
                              VectorXd phase);
  static InputSignal piecewise_linear(std::vector<double> times,
                                      std::vector<VectorXd> values);
  static InputSignal custom(int m, std::function<VectorXd(double)> fn,
                            std::function<VectorXd(double)> dfn = nullptr);

  VectorXd operator()(double t) const;

  /// Analytic time derivative; required by models whose ports carry dg/dt.
  bool has_derivative() const;
  VectorXd derivative(double t) const;

  int dim() const { return m_; }
  SignalKind kind() const { return kind_; }
  bool is_zero() const { return kind_ == SignalKind::Zero; }

  const VectorXd& constant_value() const { return c_; }
  const VectorXd& amplitude() const { return amp_; }
  const VectorXd& omega() const { return omega_; }
  const VectorXd& phase() const { return phase_; }

 private:
  SignalKind kind_;
  int m_;
  VectorXd c_;                   // constant
  VectorXd amp_, omega_, phase_; // sinusoid
  std::vector<double> ts_;       // piecewise linear
  std::vector<VectorXd> vs_;
  std::function<VectorXd(double)> fn_, dfn_;
};

}  // namespace dissipact
