#pragma once

#include <Eigen/Dense>

#include "core/errors.hpp"

namespace dissipact {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Three-point stencil (1/h^2) tridiag(-1, 2, -1) on `nodes` interior nodes
/// of (0, length), h = length/(nodes+1). Symmetric positive definite.
MatrixXd laplacian_dirichlet_1d(int nodes, double length);

/// Forward-difference map from `nodes` interior displacement nodes to the
/// nodes+1 strain cells, (D w)_j = (w_j - w_{j-1})/h with zero boundary
/// values. Satisfies D^T D = laplacian_dirichlet_1d.
MatrixXd difference_dirichlet_1d(int nodes, double length);

/// 1-D Neumann stiffness (1/h) tridiag(-1, [1,2,...,2,1], -1) on `nodes`
/// cell-centered values; symmetric PSD with constant-vector kernel.
MatrixXd stiffness_neumann_1d(int nodes, double length);

/// Staggered-grid operators on the unit square with nx x ny cells.
/// Velocities live on interior faces with homogeneous Dirichlet boundary
/// values; pressure and the normal stresses in cells; the shear stress at
/// interior corners.
struct MacStokesOperators {
  int nx = 0, ny = 0;
  int n_velocity = 0;  // interior u-faces then v-faces
  int n_stress = 0;    // Txx cells, Tyy cells, Txy interior corners
  int n_cells = 0;
  double hx = 0.0, hy = 0.0;
  MatrixXd div;        // n_cells x n_velocity
  MatrixXd sym_grad;   // n_stress x n_velocity
  VectorXd stress_weights;  // quadrature weight per stress entry (2w on Txy)
};

MacStokesOperators mac_stokes_operators(int nx, int ny);

}  // namespace dissipact
