#include "core/system.hpp"

#include <Eigen/Eigenvalues>

namespace dissipact {

namespace {

double max_abs(const MatrixXd& m) {
  return m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
}

double min_symmetric_eigenvalue(const MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

StructuredSystem StructuredSystem::assemble(SystemDims dims, MatrixXd j,
                                            MatrixXd r, MatrixXd b,
                                            EnergyPtr energy) {
  dims.check();
  const int n = dims.n();
  if (j.rows() != n || j.cols() != n)
    fail(ErrorCode::DimensionMismatch, "J must be n x n");
  if (r.rows() != n || r.cols() != n)
    fail(ErrorCode::DimensionMismatch, "R must be n x n");
  if (b.rows() != n || b.cols() != dims.m)
    fail(ErrorCode::DimensionMismatch, "B must be n x m");
  if (!energy) fail(ErrorCode::InvalidParams, "missing energy model");
  if (energy->n1() != dims.n1 || energy->n2() != dims.n2)
    fail(ErrorCode::DimensionMismatch, "energy blocks do not match dims");

  const double tol_j = 1e-12 * (1.0 + max_abs(j));
  const double tol_r = 1e-12 * (1.0 + max_abs(r));
  if (max_abs(j + j.transpose()) > tol_j)
    fail(ErrorCode::StructureViolation, "J is not skew-symmetric");
  if (max_abs(r - r.transpose()) > tol_r)
    fail(ErrorCode::StructureViolation, "R is not symmetric");

  // round-off below tolerance is removed so the stored structure is exact
  j = (0.5 * (j - j.transpose())).eval();
  r = (0.5 * (r + r.transpose())).eval();

  StructuredSystem sys(dims, std::move(j), std::move(r), std::move(b),
                       std::move(energy));
  if (sys.min_eig_r_ < -sys.default_tol_psd())
    fail(ErrorCode::StructureViolation,
         "R has negative eigenvalue " + std::to_string(sys.min_eig_r_));
  return sys;
}

StructuredSystem::StructuredSystem(SystemDims dims, MatrixXd j, MatrixXd r,
                                   MatrixXd b, EnergyPtr energy)
    : dims_(dims),
      j_(std::move(j)),
      r_(std::move(r)),
      b_(std::move(b)),
      energy_(std::move(energy)) {
  min_eig_r_ = min_symmetric_eigenvalue(r_);
}

ValidationReport StructuredSystem::validate(double tol_psd) const {
  if (tol_psd < 0.0) tol_psd = default_tol_psd();
  ValidationReport rep;
  rep.skew_defect = max_abs(j_ + j_.transpose());
  rep.sym_defect = max_abs(r_ - r_.transpose());
  rep.min_eig_r = min_symmetric_eigenvalue(r_);
  rep.dim_consistent = j_.rows() == dims_.n() && r_.rows() == dims_.n() &&
                       b_.rows() == dims_.n() && b_.cols() == dims_.m &&
                       energy_->dim() == dims_.n1 + dims_.n2;
  rep.passed = rep.skew_defect == 0.0 && rep.sym_defect == 0.0 &&
               rep.min_eig_r >= -tol_psd && rep.dim_consistent;
  return rep;
}

VectorXd StructuredSystem::residual(const StatePartition& z,
                                    const StatePartition& zdot,
                                    const VectorXd& u) const {
  if (z.dims != dims_ || zdot.dims != dims_ || u.size() != dims_.m)
    fail(ErrorCode::DimensionMismatch, "residual arguments do not match dims");
  const VectorXd grad = energy_->gradient(z.x12());
  VectorXd lhs(dims_.n());
  lhs.head(dims_.n1) = grad.head(dims_.n1);
  lhs.segment(dims_.n1, dims_.n2) = zdot.z2();
  lhs.tail(dims_.n3).setZero();

  VectorXd v(dims_.n());
  v.head(dims_.n1) = zdot.z1();
  v.segment(dims_.n1, dims_.n2) = grad.tail(dims_.n2);
  v.tail(dims_.n3) = z.z3();

  return lhs - (j_ - r_) * v - b_ * u;
}

VectorXd StructuredSystem::output(const VectorXd& zdot1, const VectorXd& grad2,
                                  const VectorXd& z3) const {
  if (zdot1.size() != dims_.n1 || grad2.size() != dims_.n2 ||
      z3.size() != dims_.n3)
    fail(ErrorCode::DimensionMismatch, "output blocks do not match dims");
  return b1().transpose() * zdot1 + b2().transpose() * grad2 +
         b3().transpose() * z3;
}

std::vector<int> StructuredSystem::algebraic_rows() const {
  std::vector<int> rows;
  const MatrixXd s = j_ - r_;
  const int n1 = dims_.n1, n2 = dims_.n2;
  auto no_zdot1 = [&](int i) {
    return n1 == 0 || s.row(i).head(n1).cwiseAbs().maxCoeff() == 0.0;
  };
  for (int i = 0; i < n1; ++i)
    if (no_zdot1(i)) rows.push_back(i);
  for (int i = n1 + n2; i < dims_.n(); ++i)
    if (no_zdot1(i)) rows.push_back(i);
  return rows;
}

}  // namespace dissipact
