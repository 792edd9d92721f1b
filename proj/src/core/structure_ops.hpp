#pragma once

#include "core/system.hpp"

namespace dissipact {

/// Power-preserving coupling u = (F_skew - F_sym) y + u~ between two systems.
struct Coupling {
  MatrixXd f_skew;
  MatrixXd f_sym;
  bool residual_inputs = true;  // keep the u~ ports on the composed system
};

/// Composes two systems with interleaved state ordering
/// z1=[z1a;z1b], z2=[z2a;z2b], z3=[z3a;z3b]. The composed matrices are
/// J+B F_skew B^T and R+B F_sym B^T over the block-permuted direct sums; the
/// energy is the sum of both energies.
StructuredSystem interconnect(const StructuredSystem& sys_a,
                              const StructuredSystem& sys_b,
                              const Coupling& coupling);

/// Maps a composed-system state to/from the pair of subsystem states.
VectorXd interleave_states(const SystemDims& da, const SystemDims& db,
                           const VectorXd& za, const VectorXd& zb);
std::pair<VectorXd, VectorXd> split_states(const SystemDims& da,
                                           const SystemDims& db,
                                           const VectorXd& z);

struct ProjectionBasis {
  MatrixXd v1, v2, v3;  // n_j x r_j, full column rank
};

/// Transforms between the reduced state w~ = [w1; V2^T M2 V2 w2; w3] and the
/// full state approximation z ~ [V1 w1; V2 w2; V3 w3].
struct ReducedMap {
  MatrixXd v1, v2, v3;
  MatrixXd w2_mass;      // V2^T M2 V2
  MatrixXd m2;           // full-order M2

  VectorXd lift(const VectorXd& w_tilde) const;
  VectorXd project(const VectorXd& z_full) const;
};

struct ReducedSystem {
  StructuredSystem system;
  ReducedMap map;
};

/// Structure-preserving Petrov-Galerkin reduction with test spaces
/// V1, M2 V2, V3. Requires a block-quadratic energy (M1, M2).
ReducedSystem petrov_galerkin(const StructuredSystem& sys,
                              const ProjectionBasis& basis);

/// Thin-QR orthonormalization helper (opt-in, reduction does not require it).
MatrixXd orthonormalize(const MatrixXd& v);

/// Leading left singular vectors of a snapshot matrix; test helper for
/// building reduction bases.
MatrixXd pod_basis(const MatrixXd& snapshots, int rank);

}  // namespace dissipact
