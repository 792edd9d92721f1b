#include "core/energy.hpp"

#include <Eigen/Eigenvalues>

namespace dissipact {

namespace {

void require_symmetric(const MatrixXd& m, const char* name) {
  if (m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch, std::string(name) + " is not square");
  if (m.size() == 0) return;
  const double tol = 1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::StructureViolation, std::string(name) + " is not symmetric");
}

bool has_negative_eigenvalue(const MatrixXd& m) {
  if (m.size() == 0) return false;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double tol = 1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
  return es.eigenvalues().minCoeff() < -tol;
}

MatrixXd symmetrized(MatrixXd m) {
  m = 0.5 * (m + m.transpose()).eval();
  return m;
}

}  // namespace

QuadraticEnergy::QuadraticEnergy(MatrixXd m1, MatrixXd m2)
    : EnergyModel(static_cast<int>(m1.rows()), static_cast<int>(m2.rows())),
      m1_(std::move(m1)),
      m2_(std::move(m2)) {
  require_symmetric(m1_, "M1");
  require_symmetric(m2_, "M2");
  m1_ = symmetrized(m1_);
  m2_ = symmetrized(m2_);
  full_ = MatrixXd::Zero(dim(), dim());
  full_.topLeftCorner(n1(), n1()) = m1_;
  full_.bottomRightCorner(n2(), n2()) = m2_;
  indefinite_ = has_negative_eigenvalue(m1_) || has_negative_eigenvalue(m2_);
}

double QuadraticEnergy::value(const VectorXd& x) const {
  check_dim(x);
  return 0.5 * x.dot(full_ * x);
}

VectorXd QuadraticEnergy::gradient(const VectorXd& x) const {
  check_dim(x);
  return full_ * x;
}

MatrixXd QuadraticEnergy::hessian(const VectorXd&) const { return full_; }

GeneralQuadraticEnergy::GeneralQuadraticEnergy(int n1, int n2, MatrixXd q,
                                               VectorXd c)
    : EnergyModel(n1, n2), q_(std::move(q)), c_(std::move(c)) {
  if (q_.rows() != dim() || q_.cols() != dim() || c_.size() != dim())
    fail(ErrorCode::DimensionMismatch, "quadratic form does not match n1+n2");
  require_symmetric(q_, "Q");
  q_ = symmetrized(q_);
}

double GeneralQuadraticEnergy::value(const VectorXd& x) const {
  check_dim(x);
  return 0.5 * x.dot(q_ * x) + c_.dot(x);
}

VectorXd GeneralQuadraticEnergy::gradient(const VectorXd& x) const {
  check_dim(x);
  return q_ * x + c_;
}

MatrixXd GeneralQuadraticEnergy::hessian(const VectorXd&) const { return q_; }

AugmentedQuadraticEnergy::AugmentedQuadraticEnergy(MatrixXd stiffness,
                                                   MatrixXd mass,
                                                   MatrixXd constraint,
                                                   VectorXd offset)
    : EnergyModel(static_cast<int>(stiffness.rows() + mass.rows() +
                                   constraint.rows()),
                  0),
      k_(std::move(stiffness)),
      m_(std::move(mass)),
      bc_(std::move(constraint)),
      g_(std::move(offset)) {
  require_symmetric(k_, "K");
  require_symmetric(m_, "M");
  if (bc_.cols() != k_.rows() || g_.size() != bc_.rows())
    fail(ErrorCode::DimensionMismatch, "constraint block does not match K");
  k_ = symmetrized(k_);
  m_ = symmetrized(m_);
}

double AugmentedQuadraticEnergy::value(const VectorXd& z1) const {
  check_dim(z1);
  const auto x = z1.head(nx());
  const auto y = z1.segment(nx(), m_.rows());
  const auto lam = z1.tail(nc());
  return 0.5 * y.dot(m_ * y) + 0.5 * x.dot(k_ * x) + lam.dot(bc_ * x - g_);
}

VectorXd AugmentedQuadraticEnergy::gradient(const VectorXd& z1) const {
  check_dim(z1);
  const auto x = z1.head(nx());
  const auto y = z1.segment(nx(), m_.rows());
  const auto lam = z1.tail(nc());
  VectorXd g(dim());
  g.head(nx()) = k_ * x + bc_.transpose() * lam;
  g.segment(nx(), m_.rows()) = m_ * y;
  g.tail(nc()) = bc_ * x - g_;
  return g;
}

MatrixXd AugmentedQuadraticEnergy::hessian(const VectorXd&) const {
  MatrixXd h = MatrixXd::Zero(dim(), dim());
  const int ny = static_cast<int>(m_.rows());
  h.topLeftCorner(nx(), nx()) = k_;
  h.block(nx(), nx(), ny, ny) = m_;
  h.topRightCorner(nx(), nc()) = bc_.transpose();
  h.bottomLeftCorner(nc(), nx()) = bc_;
  return h;
}

DoubleWellLatticeEnergy::DoubleWellLatticeEnergy(MatrixXd stiffness, double eps,
                                                 VectorXd weights, int n1,
                                                 int n2)
    : EnergyModel(n1, n2), k_(std::move(stiffness)), eps_(eps),
      w_(std::move(weights)) {
  require_symmetric(k_, "K");
  if (k_.rows() != dim() || w_.size() != dim())
    fail(ErrorCode::DimensionMismatch, "lattice energy blocks do not match");
  if (eps_ <= 0.0) fail(ErrorCode::InvalidParams, "eps must be positive");
  if (dim() > 0 && w_.minCoeff() <= 0.0)
    fail(ErrorCode::InvalidParams, "quadrature weights must be positive");
  k_ = symmetrized(k_);
}

double DoubleWellLatticeEnergy::value(const VectorXd& x) const {
  check_dim(x);
  double wells = 0.0;
  for (int i = 0; i < x.size(); ++i) wells += w_[i] * well(x[i]);
  return 0.5 * eps_ * x.dot(k_ * x) + wells / eps_;
}

VectorXd DoubleWellLatticeEnergy::gradient(const VectorXd& x) const {
  check_dim(x);
  VectorXd g = eps_ * (k_ * x);
  for (int i = 0; i < x.size(); ++i) g[i] += w_[i] * well_d(x[i]) / eps_;
  return g;
}

MatrixXd DoubleWellLatticeEnergy::hessian(const VectorXd& x) const {
  check_dim(x);
  MatrixXd h = eps_ * k_;
  for (int i = 0; i < x.size(); ++i) h(i, i) += w_[i] * well_dd(x[i]) / eps_;
  return h;
}

double DoubleWellLatticeEnergy::secant_defect(const VectorXd& x,
                                              const VectorXd& xp) const {
  check_dim(x);
  check_dim(xp);
  // The quadratic part has zero midpoint defect. For the quartic wells the
  // Taylor remainder is exactly d^3 W'''(m)/24 with W'''(s) = 6s, which is
  // free of the cancellation the direct difference suffers for small d.
  double defect = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double d = xp[i] - x[i];
    const double m = 0.5 * (x[i] + xp[i]);
    defect += w_[i] * d * d * d * (6.0 * m) / 24.0;
  }
  return defect / eps_;
}

ComposedEnergy::ComposedEnergy(EnergyPtr a, EnergyPtr b)
    : EnergyModel(a->n1() + b->n1(), a->n2() + b->n2()),
      a_(std::move(a)),
      b_(std::move(b)) {}

VectorXd ComposedEnergy::split_a(const VectorXd& x) const {
  VectorXd xa(a_->dim());
  xa.head(a_->n1()) = x.head(a_->n1());
  xa.tail(a_->n2()) = x.segment(n1(), a_->n2());
  return xa;
}

VectorXd ComposedEnergy::split_b(const VectorXd& x) const {
  VectorXd xb(b_->dim());
  xb.head(b_->n1()) = x.segment(a_->n1(), b_->n1());
  xb.tail(b_->n2()) = x.tail(b_->n2());
  return xb;
}

double ComposedEnergy::value(const VectorXd& x) const {
  check_dim(x);
  return a_->value(split_a(x)) + b_->value(split_b(x));
}

VectorXd ComposedEnergy::gradient(const VectorXd& x) const {
  check_dim(x);
  const VectorXd ga = a_->gradient(split_a(x));
  const VectorXd gb = b_->gradient(split_b(x));
  VectorXd g(dim());
  g.head(a_->n1()) = ga.head(a_->n1());
  g.segment(a_->n1(), b_->n1()) = gb.head(b_->n1());
  g.segment(n1(), a_->n2()) = ga.tail(a_->n2());
  g.tail(b_->n2()) = gb.tail(b_->n2());
  return g;
}

bool ComposedEnergy::has_hessian() const {
  return a_->has_hessian() && b_->has_hessian();
}

bool ComposedEnergy::affine_gradient() const {
  return a_->affine_gradient() && b_->affine_gradient();
}

MatrixXd ComposedEnergy::hessian(const VectorXd& x) const {
  check_dim(x);
  const MatrixXd ha = a_->hessian(split_a(x));
  const MatrixXd hb = b_->hessian(split_b(x));
  MatrixXd h = MatrixXd::Zero(dim(), dim());
  // index maps from sub-energy packed order into the stacked packed order
  auto scatter = [&](const MatrixXd& hs, int off1, int off2, int m1, int m2) {
    std::vector<int> idx(static_cast<size_t>(m1 + m2));
    for (int i = 0; i < m1; ++i) idx[static_cast<size_t>(i)] = off1 + i;
    for (int i = 0; i < m2; ++i) idx[static_cast<size_t>(m1 + i)] = n1() + off2 + i;
    for (int r = 0; r < m1 + m2; ++r)
      for (int c = 0; c < m1 + m2; ++c)
        h(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(c)]) += hs(r, c);
  };
  scatter(ha, 0, 0, a_->n1(), a_->n2());
  scatter(hb, a_->n1(), a_->n2(), b_->n1(), b_->n2());
  return h;
}

double ComposedEnergy::secant_defect(const VectorXd& x,
                                     const VectorXd& xp) const {
  check_dim(x);
  check_dim(xp);
  return a_->secant_defect(split_a(x), split_a(xp)) +
         b_->secant_defect(split_b(x), split_b(xp));
}

VectorXd discrete_gradient(const EnergyModel& model, const VectorXd& x,
                           const VectorXd& xp, DiscreteGradientKind kind) {
  model.check_dim(x);
  model.check_dim(xp);
  if (kind == DiscreteGradientKind::AnalyticQuadratic) {
    if (!model.affine_gradient())
      fail(ErrorCode::IllegalKind,
           "AnalyticQuadratic discrete gradient requires a quadratic energy");
    return model.gradient(0.5 * (x + xp));
  }
  const VectorXd mid = 0.5 * (x + xp);
  const VectorXd gm = model.gradient(mid);
  const VectorXd d = xp - x;
  const double tol_dg = 1e-14 * (1.0 + x.norm() + xp.norm());
  if (d.norm() < tol_dg) return gm;
  const double corr = model.secant_defect(x, xp) / d.dot(d);
  return gm + corr * d;
}

MatrixXd discrete_gradient_jacobian(const EnergyModel& model, const VectorXd& x,
                                    const VectorXd& xp,
                                    DiscreteGradientKind kind) {
  const VectorXd mid = 0.5 * (x + xp);
  const MatrixXd hm = model.hessian(mid);
  if (kind == DiscreteGradientKind::AnalyticQuadratic ||
      model.affine_gradient())
    return 0.5 * hm;
  const VectorXd d = xp - x;
  // The rank-one terms are O(1) with an O(|d|^-2) roundoff amplification;
  // below this scale the midpoint Hessian is accurate enough for Newton.
  const double tol_dg = 1e-7 * (1.0 + x.norm() + xp.norm());
  if (d.norm() < tol_dg) return 0.5 * hm;
  const double s = d.dot(d);
  const VectorXd gm = model.gradient(mid);
  const double corr = model.secant_defect(x, xp) / s;
  const VectorXd dc =
      (model.gradient(xp) - 0.5 * (hm * d) - gm - 2.0 * corr * d) / s;
  MatrixXd jac = 0.5 * hm + d * dc.transpose();
  jac.diagonal().array() += corr;
  return jac;
}

}  // namespace dissipact
