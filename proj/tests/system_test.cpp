#include <doctest.h>

#include "core/system.hpp"

using namespace dissipact;

namespace {

EnergyPtr osc_energy() {
  MatrixXd m1(0, 0), m2(2, 2);
  m2 << 4.0, 0.0, 0.0, 1.0;
  return std::make_shared<QuadraticEnergy>(m1, m2);
}

StructuredSystem oscillator(double damping) {
  SystemDims dims{0, 2, 0, 1};
  MatrixXd j(2, 2), r(2, 2), b(2, 1);
  j << 0.0, 1.0, -1.0, 0.0;
  r << 0.0, 0.0, 0.0, damping;
  b << 0.0, 1.0;
  return StructuredSystem::assemble(dims, j, r, b, osc_energy());
}

}  // namespace

TEST_CASE("assemble stores exactly skew J and symmetric R") {
  // perturb within the 1e-12 assembly tolerance
  SystemDims dims{0, 2, 0, 0};
  MatrixXd j(2, 2), r(2, 2), b(2, 0);
  j << 0.0, 1.0, -1.0 + 3e-13, 0.0;
  r << 1.0, 0.2 + 4e-13, 0.2, 1.0;
  auto sys = StructuredSystem::assemble(dims, j, r, b, osc_energy());
  CHECK((sys.j() + sys.j().transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sys.r() - sys.r().transpose()).cwiseAbs().maxCoeff() == 0.0);
  const auto rep = sys.validate();
  CHECK(rep.passed);
  CHECK(rep.skew_defect == 0.0);
  CHECK(rep.sym_defect == 0.0);
}

TEST_CASE("assemble rejects gross symmetry violations") {
  SystemDims dims{0, 2, 0, 0};
  MatrixXd j(2, 2), r = MatrixXd::Zero(2, 2), b(2, 0);
  j << 0.0, 1.0, -0.9, 0.0;
  CHECK_THROWS_AS(StructuredSystem::assemble(dims, j, r, b, osc_energy()),
                  Error);
}

TEST_CASE("assemble rejects R with a negative eigenvalue") {
  SystemDims dims{0, 2, 0, 0};
  MatrixXd j = MatrixXd::Zero(2, 2), r(2, 2), b(2, 0);
  r << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  try {
    StructuredSystem::assemble(dims, j, r, b, osc_energy());
    FAIL("expected StructureViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StructureViolation);
  }
}

TEST_CASE("assemble rejects shape mismatches") {
  SystemDims dims{0, 2, 0, 1};
  MatrixXd j = MatrixXd::Zero(3, 3), r = MatrixXd::Zero(2, 2);
  MatrixXd b = MatrixXd::Zero(2, 1);
  CHECK_THROWS_AS(StructuredSystem::assemble(dims, j, r, b, osc_energy()),
                  Error);
  CHECK_THROWS_AS(StructuredSystem::assemble({0, 3, 0, 1}, MatrixXd::Zero(3, 3),
                                             MatrixXd::Zero(3, 3),
                                             MatrixXd::Zero(3, 1), osc_energy()),
                  Error);  // energy dim 2 != n1+n2
}

TEST_CASE("state partition views cover the blocks") {
  SystemDims dims{1, 2, 1, 0};
  VectorXd z(4);
  z << 1.0, 2.0, 3.0, 4.0;
  StatePartition p(z, dims);
  CHECK(p.z1()[0] == 1.0);
  CHECK(p.z2()[1] == 3.0);
  CHECK(p.z3()[0] == 4.0);
  CHECK(p.x12().size() == 3);
  CHECK_THROWS_AS(StatePartition(VectorXd::Zero(3), dims), Error);
}

TEST_CASE("residual vanishes exactly on the oscillator flow") {
  auto sys = oscillator(0.0);
  // q' = p, p' = -4q with M2 = diag(4, 1): grad = (4q, p)
  // model rows: z2' = (J-R) grad + B u
  VectorXd z(2), zdot(2), u(1);
  z << 0.5, -1.0;
  zdot << -1.0, -2.0;  // q' = p = -1, p' = -4q = -2
  u << 0.0;
  const VectorXd res = sys.residual(sys.make_state(z), sys.make_state(zdot), u);
  CHECK(res.norm() < 1e-15);
  // a forced variant
  u << 2.0;
  zdot << -1.0, 0.0;  // p' = -4q + u = 0
  CHECK(sys.residual(sys.make_state(z), sys.make_state(zdot), u).norm() <
        1e-15);
}

TEST_CASE("output is the port-conjugate combination") {
  auto sys = oscillator(0.3);
  VectorXd grad2(2), z3(0), zdot1(0);
  grad2 << 4.0, -1.0;
  const VectorXd y = sys.output(zdot1, grad2, z3);
  CHECK(y.size() == 1);
  CHECK(y[0] == doctest::Approx(-1.0));  // B^T grad2 = p
}

TEST_CASE("algebraic rows are rows without time derivatives") {
  // dims {1,1,1,0}: row 0 (z1) is algebraic iff its (J-R) row has no zdot1
  // coupling; row 2 (z3) always is.
  SystemDims dims{1, 1, 1, 0};
  MatrixXd j(3, 3), r = MatrixXd::Zero(3, 3), b(3, 0);
  j << 0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0;
  MatrixXd m1 = MatrixXd::Identity(1, 1), m2 = MatrixXd::Identity(1, 1);
  auto sys = StructuredSystem::assemble(
      dims, j, r, b, std::make_shared<QuadraticEnergy>(m1, m2));
  const auto rows = sys.algebraic_rows();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == 0);
  CHECK(rows[1] == 2);

  // with zdot1 coupling (here through R) the z1 row is differential
  MatrixXd r2 = MatrixXd::Zero(3, 3);
  r2(0, 0) = 1.0;
  auto sys2 = StructuredSystem::assemble(
      dims, j, r2, b, std::make_shared<QuadraticEnergy>(m1, m2));
  const auto rows2 = sys2.algebraic_rows();
  REQUIRE(rows2.size() == 1);
  CHECK(rows2[0] == 2);
}

TEST_CASE("validate reports the smallest eigenvalue of R") {
  auto sys = oscillator(0.25);
  const auto rep = sys.validate();
  CHECK(rep.passed);
  CHECK(rep.min_eig_r == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rep.dim_consistent);
}
