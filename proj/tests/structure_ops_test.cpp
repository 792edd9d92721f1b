#include <doctest.h>

#include "core/structure_ops.hpp"
#include "core/integrator.hpp"
#include "core/zoo.hpp"

using namespace dissipact;

namespace {

ZooModel oscillator(double mass, double stiffness, double damping) {
  return build_model({"ph_iso",
                      {{"mass", mass},
                       {"stiffness", stiffness},
                       {"damping", damping}},
                      0});
}

}  // namespace

TEST_CASE("gyrator interconnection matches a hand-assembled monolith") {
  auto a = oscillator(1.0, 4.0, 0.1);
  auto b = oscillator(2.0, 1.0, 0.0);
  Coupling cpl;
  cpl.f_skew = (MatrixXd(2, 2) << 0.0, 1.0, -1.0, 0.0).finished();
  cpl.f_sym = MatrixXd::Zero(2, 2);
  auto comp = interconnect(a.system, b.system, cpl);
  CHECK(comp.dims().n2 == 4);
  CHECK(comp.dims().m == 2);
  CHECK(comp.validate().passed);

  // monolithic reference written out entry by entry: states (qa, pa, qb, pb),
  // gyrator feeds ya = pa/ma into ub and -yb = -pb/mb into ua
  MatrixXd j(4, 4), r = MatrixXd::Zero(4, 4), bm(4, 2);
  j << 0, 1, 0, 0,
      -1, 0, 0, 1,
       0, 0, 0, 1,
       0, -1, -1, 0;
  r(1, 1) = 0.1;
  bm << 0, 0, 1, 0, 0, 0, 0, 1;
  MatrixXd m2 = MatrixXd::Zero(4, 4);
  m2.diagonal() << 4.0, 1.0, 1.0, 0.5;  // k_a, 1/m_a, k_b, 1/m_b
  auto energy = std::make_shared<QuadraticEnergy>(MatrixXd(0, 0), m2);
  auto mono = StructuredSystem::assemble({0, 4, 0, 2}, j, r, bm, energy);

  CHECK((comp.j() - mono.j()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((comp.r() - mono.r()).cwiseAbs().maxCoeff() < 1e-14);

  const VectorXd z0 =
      interleave_states(a.system.dims(), b.system.dims(), a.z0.z, b.z0.z);
  TimeGrid grid{0.0, 2.0, 0.01};
  auto tc = integrate(comp, comp.make_state(z0), InputSignal::zero(2), grid,
                      Scheme::Midpoint);
  auto tm = integrate(mono, mono.make_state(z0), InputSignal::zero(2), grid,
                      Scheme::Midpoint);
  double worst = 0.0;
  for (size_t n = 0; n < tc.states.size(); ++n)
    worst = std::max(worst, (tc.states[n] - tm.states[n]).norm());
  CHECK(worst < 1e-12);
  // composed energy monotone without residual inputs
  for (size_t n = 1; n < tc.energies.size(); ++n)
    CHECK(tc.energies[n] <= tc.energies[n - 1] + 1e-12);
}

TEST_CASE("resistive coupling adds symmetric dissipation") {
  auto a = oscillator(1.0, 1.0, 0.0);
  auto b = oscillator(1.0, 2.0, 0.0);
  Coupling cpl;
  cpl.f_skew = MatrixXd::Zero(2, 2);
  cpl.f_sym = (MatrixXd(2, 2) << 1.0, 0.0, 0.0, 1.0).finished();
  auto comp = interconnect(a.system, b.system, cpl);
  CHECK(comp.validate().passed);
  CHECK(comp.r().cwiseAbs().maxCoeff() > 0.0);
  TimeGrid grid{0.0, 3.0, 0.01};
  const VectorXd z0 =
      interleave_states(a.system.dims(), b.system.dims(), a.z0.z, b.z0.z);
  auto traj = integrate(comp, comp.make_state(z0), InputSignal::zero(2), grid,
                        Scheme::Midpoint);
  CHECK(traj.energies.back() < traj.energies.front() - 1e-3);
}

TEST_CASE("interconnect rejects port dimension mismatches") {
  auto a = oscillator(1.0, 1.0, 0.0);
  auto b = oscillator(1.0, 1.0, 0.0);
  Coupling cpl;
  cpl.f_skew = MatrixXd::Zero(3, 3);
  cpl.f_sym = MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(interconnect(a.system, b.system, cpl), Error);
}

TEST_CASE("interleave and split are inverse bijections") {
  SystemDims da{1, 2, 1, 0}, db{2, 1, 0, 0};
  VectorXd za(4), zb(3);
  za << 1, 2, 3, 4;
  zb << 5, 6, 7;
  const VectorXd z = interleave_states(da, db, za, zb);
  REQUIRE(z.size() == 7);
  // z1=[1,5,6], z2=[2,3,7], z3=[4]
  CHECK(z[0] == 1);
  CHECK(z[1] == 5);
  CHECK(z[2] == 6);
  CHECK(z[3] == 2);
  CHECK(z[6] == 4);
  auto [ra, rb] = split_states(da, db, z);
  CHECK((ra - za).norm() == 0.0);
  CHECK((rb - zb).norm() == 0.0);
}

TEST_CASE("identity basis reduction reproduces the full model") {
  auto model = build_model({"ph_iso", {}, 0});
  ProjectionBasis basis;
  basis.v1 = MatrixXd(0, 0);
  basis.v2 = MatrixXd::Identity(2, 2);
  basis.v3 = MatrixXd(0, 0);
  auto red = petrov_galerkin(model.system, basis);
  CHECK(red.system.validate().passed);
  CHECK((red.system.j() - model.system.j()).cwiseAbs().maxCoeff() < 1e-14);

  TimeGrid grid{0.0, 1.0, 0.01};
  auto full = integrate(model.system, model.z0, model.default_input, grid,
                        Scheme::Midpoint);
  auto w0 = red.map.project(model.z0.z);
  auto redt = integrate(red.system, red.system.make_state(w0),
                        model.default_input, grid, Scheme::Midpoint);
  double worst = 0.0;
  for (size_t n = 0; n < full.states.size(); ++n)
    worst = std::max(worst,
                     (red.map.lift(redt.states[n]) - full.states[n]).norm());
  CHECK(worst < 1e-12);
}

TEST_CASE("pod basis of string snapshots gives a dissipative reduced model") {
  auto model = build_model({"vibrating_string", {}, 16});
  TimeGrid grid{0.0, 2.0, 0.02};
  auto traj = integrate(model.system, model.z0, model.default_input, grid,
                        Scheme::Midpoint);
  const int n2 = model.system.dims().n2;
  MatrixXd snaps(n2, traj.states.size());
  for (size_t n = 0; n < traj.states.size(); ++n)
    snaps.col(static_cast<int>(n)) = traj.states[n];
  ProjectionBasis basis;
  basis.v1 = MatrixXd(0, 0);
  basis.v2 = pod_basis(snaps, 4);
  basis.v3 = MatrixXd(0, 0);
  CHECK(basis.v2.cols() == 4);

  auto red = petrov_galerkin(model.system, basis);
  CHECK(red.system.validate().passed);
  CHECK(red.system.dims().n2 == 4);
  auto redt = integrate(red.system,
                        red.system.make_state(red.map.project(model.z0.z)),
                        InputSignal::zero(model.system.dims().m), grid,
                        Scheme::Midpoint);
  for (size_t n = 1; n < redt.energies.size(); ++n)
    CHECK(redt.energies[n] <= redt.energies[n - 1] + 1e-10);
}

TEST_CASE("reduction rejects rank-deficient bases") {
  auto model = build_model({"ph_iso", {}, 0});
  ProjectionBasis basis;
  basis.v1 = MatrixXd(0, 0);
  basis.v2 = MatrixXd::Zero(2, 2);
  basis.v2.col(1) = basis.v2.col(0);
  basis.v3 = MatrixXd(0, 0);
  try {
    petrov_galerkin(model.system, basis);
    FAIL("expected RankDeficientBasis");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficientBasis);
  }
}

TEST_CASE("reduction requires a block-quadratic energy") {
  auto model = build_model({"cahn_hilliard", {}, 8});
  const auto& d = model.system.dims();
  ProjectionBasis basis;
  basis.v1 = MatrixXd::Identity(d.n1, d.n1);
  basis.v2 = MatrixXd(0, 0);
  basis.v3 = MatrixXd::Identity(d.n3, d.n3);
  try {
    petrov_galerkin(model.system, basis);
    FAIL("expected NonQuadraticEnergy");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonQuadraticEnergy);
  }
}

TEST_CASE("orthonormalize yields orthonormal columns spanning the input") {
  MatrixXd v(4, 2);
  v << 1, 1, 1, 2, 0, 1, 2, 0;
  const MatrixXd q = orthonormalize(v);
  CHECK((q.transpose() * q - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-13);
  // same column space: projecting v onto q leaves it unchanged
  CHECK((q * (q.transpose() * v) - v).cwiseAbs().maxCoeff() < 1e-12);
}
