#pragma once

#include <Eigen/Dense>

#include "core/energy.hpp"
#include "core/errors.hpp"

namespace dissipact {

struct SystemDims {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  int m = 0;

  int n() const { return n1 + n2 + n3; }

  void check() const {
    if (n1 < 0 || n2 < 0 || n3 < 0 || m < 0)
      fail(ErrorCode::DimensionMismatch, "negative block dimension");
    if (n() < 1) fail(ErrorCode::DimensionMismatch, "empty state");
  }

  bool operator==(const SystemDims&) const = default;
};

/// State vector z with its (n1,n2,n3) split. Empty blocks are zero-length
/// segments, so all block formulas hold without special cases.
struct StatePartition {
  VectorXd z;
  SystemDims dims;

  StatePartition() = default;
  StatePartition(VectorXd state, SystemDims d) : z(std::move(state)), dims(d) {
    if (z.size() != dims.n())
      fail(ErrorCode::DimensionMismatch, "state length does not match dims");
  }

  auto z1() const { return z.head(dims.n1); }
  auto z2() const { return z.segment(dims.n1, dims.n2); }
  auto z3() const { return z.tail(dims.n3); }
  auto z1() { return z.head(dims.n1); }
  auto z2() { return z.segment(dims.n1, dims.n2); }
  auto z3() { return z.tail(dims.n3); }

  /// Packed energy argument [z1; z2].
  VectorXd x12() const { return z.head(dims.n1 + dims.n2); }
};

struct ValidationReport {
  double skew_defect = 0.0;   // max |J + J^T| entry
  double sym_defect = 0.0;    // max |R - R^T| entry
  double min_eig_r = 0.0;
  bool dim_consistent = true;
  bool passed = false;
};

/// The structured system [d1 H; dz2; 0] = (J-R) [dz1; d2 H; z3] + B u with
/// output y = B^T [dz1; d2 H; z3]. Immutable after assembly; J is stored
/// exactly skew and R exactly symmetric.
class StructuredSystem {
 public:
  /// Checks matrix shapes against dims, verifies skewness/symmetry within
  /// tol_sym = 1e-12 (1 + max entry), antisymmetrizes/symmetrizes the stored
  /// copies, and verifies R >= -tol_psd.
  static StructuredSystem assemble(SystemDims dims, MatrixXd j, MatrixXd r,
                                   MatrixXd b, EnergyPtr energy);

  ValidationReport validate(double tol_psd = -1.0) const;

  /// Residual [d1 H; dz2; 0] - (J-R)[dz1; d2 H; z3] - B u of the continuous
  /// model; zero iff (z, zdot, u) satisfies the equations at this instant.
  VectorXd residual(const StatePartition& z, const StatePartition& zdot,
                    const VectorXd& u) const;

  /// y = B1^T zdot1 + B2^T grad2 + B3^T z3.
  VectorXd output(const VectorXd& zdot1, const VectorXd& grad2,
                  const VectorXd& z3) const;

  const SystemDims& dims() const { return dims_; }
  const MatrixXd& j() const { return j_; }
  const MatrixXd& r() const { return r_; }
  const MatrixXd& b() const { return b_; }
  MatrixXd jr() const { return j_ - r_; }
  auto b1() const { return b_.topRows(dims_.n1); }
  auto b2() const { return b_.middleRows(dims_.n1, dims_.n2); }
  auto b3() const { return b_.bottomRows(dims_.n3); }
  const EnergyModel& energy() const { return *energy_; }
  const EnergyPtr& energy_ptr() const { return energy_; }

  StatePartition make_state(VectorXd z) const {
    return StatePartition(std::move(z), dims_);
  }

  /// Indices of purely algebraic rows: rows whose left-hand side carries no
  /// time derivative and whose (J-R) row has no zdot1 coupling.
  std::vector<int> algebraic_rows() const;

  double default_tol_psd() const {
    const double scale = r_.size() > 0 ? r_.cwiseAbs().maxCoeff() : 0.0;
    return 1e-10 * (1.0 + scale);
  }

 private:
  StructuredSystem(SystemDims dims, MatrixXd j, MatrixXd r, MatrixXd b,
                   EnergyPtr energy);

  SystemDims dims_;
  MatrixXd j_, r_, b_;
  EnergyPtr energy_;
  double min_eig_r_ = 0.0;
};

}  // namespace dissipact
