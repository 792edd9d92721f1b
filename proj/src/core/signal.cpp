#include "core/signal.hpp"

#include <algorithm>
#include <cmath>

namespace dissipact {

InputSignal InputSignal::zero(int m) {
  InputSignal s;
  s.kind_ = SignalKind::Zero;
  s.m_ = m;
  return s;
}

InputSignal InputSignal::constant(VectorXd value) {
  InputSignal s;
  s.kind_ = SignalKind::Constant;
  s.m_ = static_cast<int>(value.size());
  s.c_ = std::move(value);
  return s;
}

InputSignal InputSignal::sinusoid(VectorXd amplitude, VectorXd omega,
                                  VectorXd phase) {
  if (amplitude.size() != omega.size() || amplitude.size() != phase.size())
    fail(ErrorCode::DimensionMismatch, "sinusoid parameter sizes differ");
  InputSignal s;
  s.kind_ = SignalKind::Sinusoid;
  s.m_ = static_cast<int>(amplitude.size());
  s.amp_ = std::move(amplitude);
  s.omega_ = std::move(omega);
  s.phase_ = std::move(phase);
  return s;
}

InputSignal InputSignal::piecewise_linear(std::vector<double> times,
                                          std::vector<VectorXd> values) {
  if (times.size() != values.size() || times.empty())
    fail(ErrorCode::InvalidParams, "piecewise signal needs matching samples");
  if (!std::is_sorted(times.begin(), times.end()))
    fail(ErrorCode::InvalidParams, "piecewise sample times must be sorted");
  InputSignal s;
  s.kind_ = SignalKind::PiecewiseLinear;
  s.m_ = static_cast<int>(values.front().size());
  for (const auto& v : values)
    if (v.size() != s.m_)
      fail(ErrorCode::DimensionMismatch, "piecewise sample dims differ");
  s.ts_ = std::move(times);
  s.vs_ = std::move(values);
  return s;
}

InputSignal InputSignal::custom(int m, std::function<VectorXd(double)> fn,
                                std::function<VectorXd(double)> dfn) {
  InputSignal s;
  s.kind_ = SignalKind::Custom;
  s.m_ = m;
  s.fn_ = std::move(fn);
  s.dfn_ = std::move(dfn);
  return s;
}

VectorXd InputSignal::operator()(double t) const {
  switch (kind_) {
    case SignalKind::Zero:
      return VectorXd::Zero(m_);
    case SignalKind::Constant:
      return c_;
    case SignalKind::Sinusoid: {
      VectorXd u(m_);
      for (int i = 0; i < m_; ++i)
        u[i] = amp_[i] * std::sin(omega_[i] * t + phase_[i]);
      return u;
    }
    case SignalKind::PiecewiseLinear: {
      if (t <= ts_.front()) return vs_.front();
      if (t >= ts_.back()) return vs_.back();
      const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
      const size_t k = static_cast<size_t>(it - ts_.begin());
      const double w = (t - ts_[k - 1]) / (ts_[k] - ts_[k - 1]);
      return (1.0 - w) * vs_[k - 1] + w * vs_[k];
    }
    case SignalKind::Custom:
      return fn_(t);
  }
  return VectorXd::Zero(m_);
}

bool InputSignal::has_derivative() const {
  switch (kind_) {
    case SignalKind::Zero:
    case SignalKind::Constant:
    case SignalKind::Sinusoid:
      return true;
    case SignalKind::Custom:
      return static_cast<bool>(dfn_);
    case SignalKind::PiecewiseLinear:
      return false;
  }
  return false;
}

VectorXd InputSignal::derivative(double t) const {
  switch (kind_) {
    case SignalKind::Zero:
    case SignalKind::Constant:
      return VectorXd::Zero(m_);
    case SignalKind::Sinusoid: {
      VectorXd u(m_);
      for (int i = 0; i < m_; ++i)
        u[i] = amp_[i] * omega_[i] * std::cos(omega_[i] * t + phase_[i]);
      return u;
    }
    case SignalKind::Custom:
      if (dfn_) return dfn_(t);
      break;
    case SignalKind::PiecewiseLinear:
      break;
  }
  fail(ErrorCode::InvalidParams, "input signal has no analytic derivative");
}

}  // namespace dissipact
