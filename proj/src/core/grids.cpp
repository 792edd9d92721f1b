#include "core/grids.hpp"

namespace dissipact {

MatrixXd laplacian_dirichlet_1d(int nodes, double length) {
  if (nodes < 1 || length <= 0.0)
    fail(ErrorCode::InvalidParams, "laplacian needs nodes >= 1, length > 0");
  const double h = length / (nodes + 1);
  MatrixXd k = MatrixXd::Zero(nodes, nodes);
  const double s = 1.0 / (h * h);
  for (int i = 0; i < nodes; ++i) {
    k(i, i) = 2.0 * s;
    if (i > 0) k(i, i - 1) = -s;
    if (i + 1 < nodes) k(i, i + 1) = -s;
  }
  return k;
}

MatrixXd difference_dirichlet_1d(int nodes, double length) {
  if (nodes < 1 || length <= 0.0)
    fail(ErrorCode::InvalidParams, "difference needs nodes >= 1, length > 0");
  const double h = length / (nodes + 1);
  MatrixXd d = MatrixXd::Zero(nodes + 1, nodes);
  for (int j = 0; j <= nodes; ++j) {
    if (j < nodes) d(j, j) = 1.0 / h;
    if (j > 0) d(j, j - 1) = -1.0 / h;
  }
  return d;
}

MatrixXd stiffness_neumann_1d(int nodes, double length) {
  if (nodes < 1 || length <= 0.0)
    fail(ErrorCode::InvalidParams, "stiffness needs nodes >= 1, length > 0");
  const double h = length / nodes;
  MatrixXd k = MatrixXd::Zero(nodes, nodes);
  const double s = 1.0 / h;
  for (int i = 0; i < nodes; ++i) {
    k(i, i) = (i == 0 || i == nodes - 1) ? s : 2.0 * s;
    if (i > 0) k(i, i - 1) = -s;
    if (i + 1 < nodes) k(i, i + 1) = -s;
  }
  if (nodes == 1) k(0, 0) = 0.0;  // single cell has no gradient
  return k;
}

MacStokesOperators mac_stokes_operators(int nx, int ny) {
  if (nx < 2 || ny < 2)
    fail(ErrorCode::InvalidParams, "MAC grid needs nx, ny >= 2");
  MacStokesOperators op;
  op.nx = nx;
  op.ny = ny;
  op.hx = 1.0 / nx;
  op.hy = 1.0 / ny;
  const int nu = (nx - 1) * ny;  // interior vertical faces
  const int nv = nx * (ny - 1);  // interior horizontal faces
  const int nc = nx * ny;
  const int ncorner = (nx - 1) * (ny - 1);
  op.n_velocity = nu + nv;
  op.n_cells = nc;
  op.n_stress = 2 * nc + ncorner;

  auto uidx = [&](int i, int j) { return j * (nx - 1) + i; };
  auto vidx = [&](int i, int j) { return nu + j * nx + i; };
  auto cidx = [&](int i, int j) { return j * nx + i; };
  auto xidx = [&](int i, int j) { return j * (nx - 1) + i; };

  op.div = MatrixXd::Zero(nc, op.n_velocity);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = cidx(i, j);
      if (i < nx - 1) op.div(c, uidx(i, j)) += 1.0 / op.hx;      // east face
      if (i > 0) op.div(c, uidx(i - 1, j)) -= 1.0 / op.hx;       // west face
      if (j < ny - 1) op.div(c, vidx(i, j)) += 1.0 / op.hy;      // north face
      if (j > 0) op.div(c, vidx(i, j - 1)) -= 1.0 / op.hy;       // south face
    }
  }

  op.sym_grad = MatrixXd::Zero(op.n_stress, op.n_velocity);
  // Txx = du/dx per cell, Tyy = dv/dy per cell
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = cidx(i, j);
      if (i < nx - 1) op.sym_grad(c, uidx(i, j)) += 1.0 / op.hx;
      if (i > 0) op.sym_grad(c, uidx(i - 1, j)) -= 1.0 / op.hx;
      if (j < ny - 1) op.sym_grad(nc + c, vidx(i, j)) += 1.0 / op.hy;
      if (j > 0) op.sym_grad(nc + c, vidx(i, j - 1)) -= 1.0 / op.hy;
    }
  }
  // Txy = (du/dy + dv/dx)/2 at interior corners
  for (int j = 0; j < ny - 1; ++j) {
    for (int i = 0; i < nx - 1; ++i) {
      const int r = 2 * nc + xidx(i, j);
      op.sym_grad(r, uidx(i, j + 1)) += 0.5 / op.hy;
      op.sym_grad(r, uidx(i, j)) -= 0.5 / op.hy;
      op.sym_grad(r, vidx(i + 1, j)) += 0.5 / op.hx;
      op.sym_grad(r, vidx(i, j)) -= 0.5 / op.hx;
    }
  }

  const double w = op.hx * op.hy;
  op.stress_weights = VectorXd::Constant(op.n_stress, w);
  op.stress_weights.tail(ncorner).setConstant(2.0 * w);  // |T|^2 counts Txy twice
  return op;
}

}  // namespace dissipact
