#pragma once

#include <Eigen/Dense>
#include <memory>

#include "core/errors.hpp"

namespace dissipact {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class EnergyKind {
  Quadratic,          // H = 1/2 <z1,M1 z1> + 1/2 <z2,M2 z2>
  GeneralQuadratic,   // H = 1/2 <x,Q x> + <c,x> over x = [z1;z2]
  AugmentedQuadratic, // mechanical energy plus a vanishing constraint term
  DoubleWellLattice,  // lattice gradient energy with quartic double wells
  Composed,           // sum of two energies over stacked blocks
};

/// Energy function H(z1,z2) with analytic gradient. Evaluations take the
/// packed vector x = [z1; z2] of length n1+n2. The z3 part of the state never
/// enters the energy.
class EnergyModel {
 public:
  virtual ~EnergyModel() = default;

  virtual EnergyKind kind() const = 0;
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int dim() const { return n1_ + n2_; }

  virtual double value(const VectorXd& x) const = 0;
  virtual VectorXd gradient(const VectorXd& x) const = 0;

  virtual bool has_hessian() const { return false; }
  virtual MatrixXd hessian(const VectorXd& /*x*/) const {
    fail(ErrorCode::IllegalKind, "energy model provides no Hessian");
  }

  /// True when the gradient is an affine map of the state (constant Hessian).
  /// Such energies admit a pre-factorized linear step per time level.
  virtual bool affine_gradient() const { return false; }

  /// H(xp) - H(x) - <grad((x+xp)/2), xp - x>, the numerator of the discrete
  /// gradient correction. Models override this when they can evaluate it
  /// without the catastrophic cancellation of the direct difference.
  virtual double secant_defect(const VectorXd& x, const VectorXd& xp) const {
    if (affine_gradient()) return 0.0;
    return value(xp) - value(x) - gradient(0.5 * (x + xp)).dot(xp - x);
  }

  void check_dim(const VectorXd& x) const {
    if (x.size() != dim())
      fail(ErrorCode::DimensionMismatch,
           "energy argument has length " + std::to_string(x.size()) +
               ", expected " + std::to_string(dim()));
  }

 protected:
  EnergyModel(int n1, int n2) : n1_(n1), n2_(n2) {
    if (n1 < 0 || n2 < 0)
      fail(ErrorCode::InvalidParams, "negative energy block size");
  }

 private:
  int n1_;
  int n2_;
};

using EnergyPtr = std::shared_ptr<const EnergyModel>;

/// H = 1/2 <z1, M1 z1> + 1/2 <z2, M2 z2> with symmetric M1, M2.
class QuadraticEnergy final : public EnergyModel {
 public:
  QuadraticEnergy(MatrixXd m1, MatrixXd m2);

  EnergyKind kind() const override { return EnergyKind::Quadratic; }
  double value(const VectorXd& x) const override;
  VectorXd gradient(const VectorXd& x) const override;
  bool has_hessian() const override { return true; }
  MatrixXd hessian(const VectorXd& x) const override;
  bool affine_gradient() const override { return true; }

  const MatrixXd& m1() const { return m1_; }
  const MatrixXd& m2() const { return m2_; }
  /// True when either block has a negative eigenvalue; informational only,
  /// the model class does not require definiteness.
  bool indefinite() const { return indefinite_; }

 private:
  MatrixXd m1_, m2_;
  MatrixXd full_;  // Diag(M1, M2), cached
  bool indefinite_ = false;
};

/// H = 1/2 <x, Q x> + <c, x> with symmetric Q over the packed state. Covers
/// energies with cross terms between z1 and z2, e.g. the singular
/// perturbation of the semi-explicit DAE.
class GeneralQuadraticEnergy final : public EnergyModel {
 public:
  GeneralQuadraticEnergy(int n1, int n2, MatrixXd q, VectorXd c);

  EnergyKind kind() const override { return EnergyKind::GeneralQuadratic; }
  double value(const VectorXd& x) const override;
  VectorXd gradient(const VectorXd& x) const override;
  bool has_hessian() const override { return true; }
  MatrixXd hessian(const VectorXd& x) const override;
  bool affine_gradient() const override { return true; }

  const MatrixXd& q() const { return q_; }
  const VectorXd& c() const { return c_; }

 private:
  MatrixXd q_;
  VectorXd c_;
};

/// H = 1/2 <y, M y> + 1/2 <x, K x> + <lambda, Bc x - g> over z1 = [x; y; lambda].
/// The constraint term vanishes on the solution manifold; g must be constant.
class AugmentedQuadraticEnergy final : public EnergyModel {
 public:
  AugmentedQuadraticEnergy(MatrixXd stiffness, MatrixXd mass,
                           MatrixXd constraint, VectorXd offset);

  EnergyKind kind() const override { return EnergyKind::AugmentedQuadratic; }
  double value(const VectorXd& x) const override;
  VectorXd gradient(const VectorXd& x) const override;
  bool has_hessian() const override { return true; }
  MatrixXd hessian(const VectorXd& x) const override;
  bool affine_gradient() const override { return true; }

  const MatrixXd& stiffness() const { return k_; }
  const MatrixXd& mass() const { return m_; }
  const MatrixXd& constraint() const { return bc_; }
  const VectorXd& offset() const { return g_; }
  int nx() const { return static_cast<int>(k_.rows()); }
  int nc() const { return static_cast<int>(bc_.rows()); }

 private:
  MatrixXd k_, m_, bc_;
  VectorXd g_;
};

/// H = eps/2 <K x, x> + 1/eps * sum_i w_i W(x_i) with W(s) = (s^2-1)^2 / 4.
/// K is a (weighted) stiffness matrix, w_i nodal quadrature weights.
class DoubleWellLatticeEnergy final : public EnergyModel {
 public:
  DoubleWellLatticeEnergy(MatrixXd stiffness, double eps, VectorXd weights,
                          int n1, int n2);

  EnergyKind kind() const override { return EnergyKind::DoubleWellLattice; }
  double value(const VectorXd& x) const override;
  VectorXd gradient(const VectorXd& x) const override;
  bool has_hessian() const override { return true; }
  MatrixXd hessian(const VectorXd& x) const override;
  double secant_defect(const VectorXd& x, const VectorXd& xp) const override;

  const MatrixXd& stiffness() const { return k_; }
  double eps() const { return eps_; }
  const VectorXd& weights() const { return w_; }

  static double well(double s) { double q = s * s - 1.0; return 0.25 * q * q; }
  static double well_d(double s) { return s * (s * s - 1.0); }
  static double well_dd(double s) { return 3.0 * s * s - 1.0; }

 private:
  MatrixXd k_;
  double eps_;
  VectorXd w_;
};

/// H(x) = Ha(xa) + Hb(xb) over the stacked packed state
/// x = [z1a; z1b; z2a; z2b]; used by structure-preserving interconnection.
class ComposedEnergy final : public EnergyModel {
 public:
  ComposedEnergy(EnergyPtr a, EnergyPtr b);

  EnergyKind kind() const override { return EnergyKind::Composed; }
  double value(const VectorXd& x) const override;
  VectorXd gradient(const VectorXd& x) const override;
  bool has_hessian() const override;
  MatrixXd hessian(const VectorXd& x) const override;
  bool affine_gradient() const override;
  double secant_defect(const VectorXd& x, const VectorXd& xp) const override;

  const EnergyPtr& first() const { return a_; }
  const EnergyPtr& second() const { return b_; }

 private:
  VectorXd split_a(const VectorXd& x) const;
  VectorXd split_b(const VectorXd& x) const;

  EnergyPtr a_, b_;
};

enum class DiscreteGradientKind {
  GonzalezMidpoint,
  AnalyticQuadratic,  // only legal for affine-gradient energies
};

/// Discrete gradient of H between packed states x and xp. Satisfies the
/// secant property <dg, xp-x> = H(xp) - H(x) and consistency dg(x,x) = grad(x).
VectorXd discrete_gradient(const EnergyModel& model, const VectorXd& x,
                           const VectorXd& xp, DiscreteGradientKind kind);

/// Jacobian of discrete_gradient with respect to xp; requires a Hessian.
MatrixXd discrete_gradient_jacobian(const EnergyModel& model,
                                    const VectorXd& x, const VectorXd& xp,
                                    DiscreteGradientKind kind);

}  // namespace dissipact
