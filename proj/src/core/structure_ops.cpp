#include "core/structure_ops.hpp"

#include <Eigen/SVD>

namespace dissipact {

namespace {

double max_abs(const MatrixXd& m) {
  return m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
}

// new-index -> (source system, source index) for the interleaved ordering
std::vector<std::pair<int, int>> interleave_order(const SystemDims& da,
                                                  const SystemDims& db) {
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<size_t>(da.n() + db.n()));
  auto block = [&](int off_a, int len_a, int off_b, int len_b) {
    for (int i = 0; i < len_a; ++i) order.emplace_back(0, off_a + i);
    for (int i = 0; i < len_b; ++i) order.emplace_back(1, off_b + i);
  };
  block(0, da.n1, 0, db.n1);
  block(da.n1, da.n2, db.n1, db.n2);
  block(da.n1 + da.n2, da.n3, db.n1 + db.n2, db.n3);
  return order;
}

}  // namespace

VectorXd interleave_states(const SystemDims& da, const SystemDims& db,
                           const VectorXd& za, const VectorXd& zb) {
  const auto order = interleave_order(da, db);
  VectorXd z(da.n() + db.n());
  for (size_t i = 0; i < order.size(); ++i)
    z[static_cast<Eigen::Index>(i)] =
        order[i].first == 0 ? za[order[i].second] : zb[order[i].second];
  return z;
}

std::pair<VectorXd, VectorXd> split_states(const SystemDims& da,
                                           const SystemDims& db,
                                           const VectorXd& z) {
  const auto order = interleave_order(da, db);
  VectorXd za(da.n()), zb(db.n());
  for (size_t i = 0; i < order.size(); ++i) {
    if (order[i].first == 0)
      za[order[i].second] = z[static_cast<Eigen::Index>(i)];
    else
      zb[order[i].second] = z[static_cast<Eigen::Index>(i)];
  }
  return {za, zb};
}

StructuredSystem interconnect(const StructuredSystem& sys_a,
                              const StructuredSystem& sys_b,
                              const Coupling& coupling) {
  const auto& da = sys_a.dims();
  const auto& db = sys_b.dims();
  const int mc = da.m + db.m;
  if (coupling.f_skew.rows() != mc || coupling.f_skew.cols() != mc ||
      coupling.f_sym.rows() != mc || coupling.f_sym.cols() != mc)
    fail(ErrorCode::DimensionMismatch,
         "coupling matrices must be (m1+m2) x (m1+m2)");
  const double tol_fs = 1e-12 * (1.0 + max_abs(coupling.f_skew));
  if (max_abs(coupling.f_skew + coupling.f_skew.transpose()) > tol_fs)
    fail(ErrorCode::StructureViolation, "F_skew is not skew-symmetric");
  const double tol_fy = 1e-12 * (1.0 + max_abs(coupling.f_sym));
  if (max_abs(coupling.f_sym - coupling.f_sym.transpose()) > tol_fy)
    fail(ErrorCode::StructureViolation, "F_sym is not symmetric");

  const auto order = interleave_order(da, db);
  const int n = da.n() + db.n();
  MatrixXd jbar = MatrixXd::Zero(n, n);
  MatrixXd rbar = MatrixXd::Zero(n, n);
  MatrixXd bbar = MatrixXd::Zero(n, mc);
  for (int i = 0; i < n; ++i) {
    const auto [si, oi] = order[static_cast<size_t>(i)];
    const StructuredSystem& src = si == 0 ? sys_a : sys_b;
    for (int j = 0; j < n; ++j) {
      const auto [sj, oj] = order[static_cast<size_t>(j)];
      if (si != sj) continue;
      jbar(i, j) = src.j()(oi, oj);
      rbar(i, j) = src.r()(oi, oj);
    }
    const int col_off = si == 0 ? 0 : da.m;
    for (int c = 0; c < src.dims().m; ++c)
      bbar(i, col_off + c) = src.b()(oi, c);
  }

  MatrixXd j_new = jbar + bbar * coupling.f_skew * bbar.transpose();
  MatrixXd r_new = rbar + bbar * coupling.f_sym * bbar.transpose();

  EnergyPtr energy;
  const auto* qa = dynamic_cast<const QuadraticEnergy*>(&sys_a.energy());
  const auto* qb = dynamic_cast<const QuadraticEnergy*>(&sys_b.energy());
  if (qa && qb) {
    MatrixXd m1 = MatrixXd::Zero(da.n1 + db.n1, da.n1 + db.n1);
    m1.topLeftCorner(da.n1, da.n1) = qa->m1();
    m1.bottomRightCorner(db.n1, db.n1) = qb->m1();
    MatrixXd m2 = MatrixXd::Zero(da.n2 + db.n2, da.n2 + db.n2);
    m2.topLeftCorner(da.n2, da.n2) = qa->m2();
    m2.bottomRightCorner(db.n2, db.n2) = qb->m2();
    energy = std::make_shared<QuadraticEnergy>(std::move(m1), std::move(m2));
  } else {
    energy = std::make_shared<ComposedEnergy>(sys_a.energy_ptr(),
                                              sys_b.energy_ptr());
  }

  SystemDims dims{da.n1 + db.n1, da.n2 + db.n2, da.n3 + db.n3,
                  coupling.residual_inputs ? mc : 0};
  MatrixXd b_new =
      coupling.residual_inputs ? bbar : MatrixXd::Zero(n, 0);
  return StructuredSystem::assemble(dims, std::move(j_new), std::move(r_new),
                                    std::move(b_new), std::move(energy));
}

VectorXd ReducedMap::lift(const VectorXd& w_tilde) const {
  const auto r1 = v1.cols(), r2 = v2.cols(), r3 = v3.cols();
  if (w_tilde.size() != r1 + r2 + r3)
    fail(ErrorCode::DimensionMismatch, "reduced state has wrong length");
  VectorXd z(v1.rows() + v2.rows() + v3.rows());
  z.head(v1.rows()) = v1 * w_tilde.head(r1);
  if (r2 > 0) {
    const VectorXd w2 = w2_mass.ldlt().solve(w_tilde.segment(r1, r2));
    z.segment(v1.rows(), v2.rows()) = v2 * w2;
  }
  z.tail(v3.rows()) = v3 * w_tilde.tail(r3);
  return z;
}

VectorXd ReducedMap::project(const VectorXd& z_full) const {
  const auto n1 = v1.rows(), n2 = v2.rows(), n3 = v3.rows();
  if (z_full.size() != n1 + n2 + n3)
    fail(ErrorCode::DimensionMismatch, "full state has wrong length");
  VectorXd w(v1.cols() + v2.cols() + v3.cols());
  if (v1.cols() > 0)
    w.head(v1.cols()) = v1.colPivHouseholderQr().solve(z_full.head(n1));
  // M2-orthogonal projection is exact on range(V2) and yields w~2 directly
  if (v2.cols() > 0)
    w.segment(v1.cols(), v2.cols()) =
        v2.transpose() * (m2 * z_full.segment(n1, n2));
  if (v3.cols() > 0)
    w.tail(v3.cols()) = v3.colPivHouseholderQr().solve(z_full.tail(n3));
  return w;
}

ReducedSystem petrov_galerkin(const StructuredSystem& sys,
                              const ProjectionBasis& basis) {
  const auto* quad = dynamic_cast<const QuadraticEnergy*>(&sys.energy());
  if (!quad)
    fail(ErrorCode::NonQuadraticEnergy,
         "Petrov-Galerkin reduction requires a block-quadratic energy");
  const auto& d = sys.dims();
  if (basis.v1.rows() != d.n1 || basis.v2.rows() != d.n2 ||
      basis.v3.rows() != d.n3)
    fail(ErrorCode::DimensionMismatch, "basis row counts do not match dims");
  const int r1 = static_cast<int>(basis.v1.cols());
  const int r2 = static_cast<int>(basis.v2.cols());
  const int r3 = static_cast<int>(basis.v3.cols());
  if (r1 > d.n1 || r2 > d.n2 || r3 > d.n3)
    fail(ErrorCode::DimensionMismatch, "basis wider than the full space");
  auto full_rank = [](const MatrixXd& v) {
    return v.cols() == 0 ||
           v.colPivHouseholderQr().rank() == v.cols();
  };
  if (!full_rank(basis.v1) || !full_rank(basis.v2) || !full_rank(basis.v3))
    fail(ErrorCode::RankDeficientBasis, "basis columns are linearly dependent");

  const MatrixXd w2_mass =
      basis.v2.transpose() * quad->m2() * basis.v2;
  if (r2 > 0) {
    Eigen::JacobiSVD<MatrixXd> svd(w2_mass);
    const auto& sv = svd.singularValues();
    if (sv.minCoeff() <= 0.0 || sv.maxCoeff() / sv.minCoeff() > 1e12)
      fail(ErrorCode::SingularReducedMass,
           "V2^T M2 V2 is singular or too ill-conditioned");
  }

  // test space Diag(V1, M2 V2, V3)
  const int n = d.n();
  MatrixXd t = MatrixXd::Zero(n, r1 + r2 + r3);
  t.block(0, 0, d.n1, r1) = basis.v1;
  t.block(d.n1, r1, d.n2, r2) = quad->m2() * basis.v2;
  t.block(d.n1 + d.n2, r1 + r2, d.n3, r3) = basis.v3;

  MatrixXd j_red = t.transpose() * sys.j() * t;
  MatrixXd r_red = t.transpose() * sys.r() * t;
  MatrixXd b_red = t.transpose() * sys.b();

  MatrixXd m1_red = basis.v1.transpose() * quad->m1() * basis.v1;
  MatrixXd m2_red;
  if (r2 > 0) {
    m2_red = w2_mass.inverse();
    m2_red = (0.5 * (m2_red + m2_red.transpose())).eval();
  } else {
    m2_red = MatrixXd::Zero(0, 0);
  }

  SystemDims dims{r1, r2, r3, d.m};
  auto energy =
      std::make_shared<QuadraticEnergy>(std::move(m1_red), std::move(m2_red));
  ReducedSystem out{
      StructuredSystem::assemble(dims, std::move(j_red), std::move(r_red),
                                 std::move(b_red), std::move(energy)),
      ReducedMap{basis.v1, basis.v2, basis.v3, w2_mass, quad->m2()}};
  return out;
}

MatrixXd orthonormalize(const MatrixXd& v) {
  if (v.cols() == 0) return v;
  Eigen::HouseholderQR<MatrixXd> qr(v);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(v.rows(), v.cols());
  return q;
}

MatrixXd pod_basis(const MatrixXd& snapshots, int rank) {
  if (rank < 1 || rank > snapshots.rows())
    fail(ErrorCode::InvalidParams, "pod rank out of range");
  Eigen::JacobiSVD<MatrixXd> svd(snapshots, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

}  // namespace dissipact
