#include "core/zoo.hpp"

#include <cmath>
#include <numbers>

#include "core/grids.hpp"

namespace dissipact {

namespace {

constexpr double kPi = std::numbers::pi;

/// Pulls scalar parameters out of a ModelSpec and rejects unknown keys.
class ParamReader {
 public:
  explicit ParamReader(const ModelSpec& spec) : spec_(spec) {}

  double get(const std::string& key, double fallback) {
    used_.push_back(key);
    auto it = spec_.params.find(key);
    return it == spec_.params.end() ? fallback : it->second;
  }

  double positive(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (v <= 0.0)
      fail(ErrorCode::InvalidParams,
           spec_.name + ": parameter '" + key + "' must be positive");
    return v;
  }

  double nonnegative(const std::string& key, double fallback) {
    const double v = get(key, fallback);
    if (v < 0.0)
      fail(ErrorCode::InvalidParams,
           spec_.name + ": parameter '" + key + "' must be >= 0");
    return v;
  }

  int grid_or(int fallback) const {
    if (spec_.grid < 0)
      fail(ErrorCode::InvalidParams, spec_.name + ": grid must be positive");
    return spec_.grid == 0 ? fallback : spec_.grid;
  }

  void done() const {
    for (const auto& [key, value] : spec_.params) {
      (void)value;
      bool known = false;
      for (const auto& u : used_)
        if (u == key) known = true;
      if (!known)
        fail(ErrorCode::InvalidParams,
             spec_.name + ": unknown parameter '" + key + "'");
    }
  }

 private:
  const ModelSpec& spec_;
  std::vector<std::string> used_;
};

MatrixXd zeros(int r, int c) { return MatrixXd::Zero(r, c); }

/// Mass-spring-damper as a two-field system: z2 = (q, p),
/// H = k q^2 / 2 + p^2 / (2m), one force input on the momentum.
ZooModel build_ph_iso(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double m = pr.positive("mass", 1.0);
  const double k = pr.positive("stiffness", 1.0);
  const double c = pr.nonnegative("damping", 0.1);
  pr.done();

  SystemDims dims{0, 2, 0, 1};
  MatrixXd j(2, 2), r(2, 2), b(2, 1);
  j << 0, 1, -1, 0;
  r << 0, 0, 0, c;
  b << 0, 1;
  MatrixXd m2(2, 2);
  m2 << k, 0, 0, 1.0 / m;
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd z0(2);
  z0 << 1.0, 0.0;

  ZooModel model{std::move(sys), StatePartition(z0, dims),
                 InputSignal::zero(1), 0.01,
                 "damped harmonic oscillator (q, p) with force input"};
  if (c == 0.0) {
    const double omega = std::sqrt(k / m);
    const double q0 = z0[0], p0 = z0[1];
    model.oracle = [=](double t) {
      VectorXd z(2);
      z << q0 * std::cos(omega * t) + p0 / (m * omega) * std::sin(omega * t),
          -m * omega * q0 * std::sin(omega * t) + p0 * std::cos(omega * t);
      return z;
    };
  }
  return model;
}

/// Pure dissipation: quadratic energy with an SPD friction matrix, or a
/// lattice double-well energy relaxing with unit mobility.
ZooModel build_gradient_flow(const ModelSpec& spec) {
  ParamReader pr(spec);
  const bool double_well = pr.get("double_well", 0.0) != 0.0;
  if (!double_well) {
    pr.done();
    SystemDims dims{2, 0, 0, 0};
    MatrixXd r(2, 2);
    r << 2, -1, -1, 2;
    MatrixXd m1(2, 2);
    m1 << 1, 0, 0, 2;
    auto energy = std::make_shared<QuadraticEnergy>(m1, zeros(0, 0));
    auto sys = StructuredSystem::assemble(dims, zeros(2, 2), r, zeros(2, 0),
                                          energy);
    VectorXd z0(2);
    z0 << 1.0, -1.0;
    return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0),
            0.01, "quadratic gradient flow with SPD friction"};
  }

  const double eps = pr.positive("eps", 0.1);
  const int n = pr.grid_or(16);
  pr.done();
  const double h = 1.0 / n;
  SystemDims dims{n, 0, 0, 0};
  auto energy = std::make_shared<DoubleWellLatticeEnergy>(
      stiffness_neumann_1d(n, 1.0), eps, VectorXd::Constant(n, h), n, 0);
  auto sys = StructuredSystem::assemble(dims, zeros(n, n),
                                        MatrixXd::Identity(n, n), zeros(n, 0),
                                        energy);
  VectorXd z0(n);
  for (int i = 0; i < n; ++i)
    z0[i] = 0.9 * std::cos(2.0 * kPi * (i + 0.5) * h);
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0), 0.1,
          "double-well lattice relaxing by unit-mobility gradient flow"};
}

/// Quasi-static mechanics coupled to pressure diffusion. The displacement
/// block carries no time derivative, so its rows are purely algebraic.
ZooModel build_poroelasticity(const ModelSpec& spec) {
  ParamReader pr(spec);
  const int n = pr.grid_or(8);
  const double alpha = pr.positive("alpha", 1.0);
  const double c = pr.positive("storage", 1.0);
  pr.done();

  const MatrixXd a = laplacian_dirichlet_1d(n, 1.0);
  const MatrixXd bstiff = laplacian_dirichlet_1d(n, 1.0);
  MatrixXd d = MatrixXd::Zero(n, n);  // full-rank coupling
  for (int i = 0; i < n; ++i) {
    d(i, i) = alpha;
    if (i > 0) d(i, i - 1) = -alpha;
  }

  SystemDims dims{n, n, 0, 2 * n};
  MatrixXd j = zeros(2 * n, 2 * n), r = zeros(2 * n, 2 * n);
  j.topRightCorner(n, n) = d.transpose();
  j.bottomLeftCorner(n, n) = -d;
  r.bottomRightCorner(n, n) = bstiff;
  MatrixXd b = MatrixXd::Identity(2 * n, 2 * n);
  auto energy = std::make_shared<QuadraticEnergy>(
      a, MatrixXd::Identity(n, n) / c);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  const double h = 1.0 / (n + 1);
  VectorXd p0(n);
  for (int i = 0; i < n; ++i) p0[i] = std::sin(kPi * (i + 1) * h);
  // elastostatic balance A u = D^T p at t = 0 (zero load)
  const VectorXd u0 = a.fullPivLu().solve(d.transpose() * p0);
  VectorXd z0(2 * n);
  z0 << u0, c * p0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(2 * n),
          0.01, "quasi-static elasticity coupled to pressure diffusion"};
}

/// Small dense system whose z1 block is algebraic but uniquely solvable from
/// z2; the standard index-1 situation.
ZooModel build_index1_class(const ModelSpec& spec) {
  ParamReader pr(spec);
  pr.done();
  SystemDims dims{2, 2, 0, 0};
  MatrixXd d(2, 2), j2(2, 2), r2(2, 2), m1(2, 2), m2(2, 2);
  d << 1, 0, 0.5, 1;
  j2 << 0, 1, -1, 0;
  r2 << 0.1, 0, 0, 0.1;
  m1 << 2, 0, 0, 1;
  m2 << 1, 0, 0, 1;
  MatrixXd j = zeros(4, 4), r = zeros(4, 4);
  j.topRightCorner(2, 2) = d.transpose();
  j.bottomLeftCorner(2, 2) = -d;
  j.bottomRightCorner(2, 2) = j2;
  r.bottomRightCorner(2, 2) = r2;
  auto energy = std::make_shared<QuadraticEnergy>(m1, m2);
  auto sys = StructuredSystem::assemble(dims, j, r, zeros(4, 0), energy);

  VectorXd z2(2);
  z2 << 1.0, -1.0;
  const VectorXd z1 = m1.fullPivLu().solve(d.transpose() * m2 * z2);
  VectorXd z0(4);
  z0 << z1, z2;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0), 0.01,
          "index-1 pair: algebraic z1 block slaved to the dynamic z2 block"};
}

void semiexplicit_blocks(MatrixXd& a, MatrixXd& mass, MatrixXd& bc) {
  a.resize(3, 3);
  a << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  mass = MatrixXd::Zero(3, 3);
  mass.diagonal() << 1.0, 1.5, 2.0;
  bc.resize(1, 3);
  bc << 1, 1, 1;
}

/// Constrained diffusion: M u' = -A u - Bc^T lambda + f, Bc u = g. The
/// multiplier is a z3 variable; the constraint row is enforced at stages.
ZooModel build_index2_semiexplicit(const ModelSpec& spec) {
  ParamReader pr(spec);
  pr.done();
  MatrixXd a, mass, bc;
  semiexplicit_blocks(a, mass, bc);

  SystemDims dims{0, 3, 1, 4};
  MatrixXd j = zeros(4, 4), r = zeros(4, 4), b = zeros(4, 4);
  j.topRightCorner(3, 1) = -bc.transpose();
  j.bottomLeftCorner(1, 3) = bc;
  r.topLeftCorner(3, 3) = a;
  b.topLeftCorner(3, 3) = MatrixXd::Identity(3, 3);
  b(3, 3) = -1.0;  // last channel carries g
  auto energy = std::make_shared<QuadraticEnergy>(
      zeros(0, 0), MatrixXd(mass.inverse()));
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd u0(3);
  u0 << 1.0, 0.0, -1.0;  // Bc u0 = 0
  VectorXd z0(4);
  z0 << mass * u0, 0.0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(4), 0.01,
          "index-2 semi-explicit DAE with a scalar linear constraint"};
}

/// Regularization of the semi-explicit DAE: the constraint is relaxed to
/// eps^2 lambda' = Bc u - g, making the multiplier a fast state z2b =
/// eps*lambda. Encoded with z2 = [M u; eps lambda] and the positive-definite
/// energy H = <u, M u>/2 + |eps lambda|^2/2, which keeps R = Diag(A, 0) PSD
/// and recovers the constraint manifold as eps -> 0.
ZooModel build_index2_singular_perturbation(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double eps = pr.positive("eps", 1e-2);
  pr.done();
  MatrixXd a, mass, bc;
  semiexplicit_blocks(a, mass, bc);

  SystemDims dims{0, 4, 0, 4};
  MatrixXd j = zeros(4, 4), r = zeros(4, 4), b = zeros(4, 4);
  j.topRightCorner(3, 1) = -bc.transpose() / eps;
  j.bottomLeftCorner(1, 3) = bc / eps;
  r.topLeftCorner(3, 3) = a;
  b.topLeftCorner(3, 3) = MatrixXd::Identity(3, 3);
  b(3, 3) = -1.0 / eps;  // last channel carries g
  MatrixXd m2 = MatrixXd::Identity(4, 4);
  m2.topLeftCorner(3, 3) = mass.inverse();
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd u0(3);
  u0 << 1.0, 0.0, -1.0;
  // multiplier consistent with the eps -> 0 limit at t = 0 (zero load)
  const MatrixXd minv = mass.inverse();
  const MatrixXd schur = bc * minv * bc.transpose();
  const VectorXd lam0 = schur.fullPivLu().solve(bc * minv * (-a * u0));
  VectorXd z0(4);
  z0 << mass * u0, eps * lam0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(4), 0.01,
          "singular perturbation of the semi-explicit DAE, eps = " +
              std::to_string(eps)};
}

/// Same constrained diffusion, but the constraint is imposed on the time
/// derivative: Bc u' = dg/dt. Channel 4 of the input expects dg/dt.
ZooModel build_index2_derivative_constraint(const ModelSpec& spec) {
  ParamReader pr(spec);
  pr.done();
  MatrixXd a, mass, bc;
  semiexplicit_blocks(a, mass, bc);

  SystemDims dims{3, 0, 1, 4};
  MatrixXd j = zeros(4, 4), r = zeros(4, 4), b = zeros(4, 4);
  j.topRightCorner(3, 1) = -bc.transpose();
  j.bottomLeftCorner(1, 3) = bc;
  r.topLeftCorner(3, 3) = mass;
  b.topLeftCorner(3, 3) = MatrixXd::Identity(3, 3);
  b(3, 3) = -1.0;  // last channel carries dg/dt
  auto energy = std::make_shared<QuadraticEnergy>(a, zeros(0, 0));
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd z0(4);
  z0 << 1.0, 0.0, -1.0, 0.0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(4), 0.01,
          "index-2 DAE with the constraint on the state derivative"};
}

/// RLC ladder with two resistive shunt branches and a driving voltage.
/// States: inductor flux and two capacitor charges; algebraic branch
/// currents through the source resistor and the load resistor.
ZooModel build_dc_network(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double rg = pr.positive("r_source", 1.0);
  const double rl = pr.nonnegative("r_line", 1.0);
  const double rr = pr.positive("r_load", 1.0);
  const double l = pr.positive("inductance", 1.0);
  const double c1 = pr.positive("c1", 1.0);
  const double c2 = pr.positive("c2", 1.0);
  const double i0 = pr.get("i0", 1.0);
  const double v10 = pr.get("v10", 1.0);
  const double v20 = pr.get("v20", 1.0);
  pr.done();

  SystemDims dims{0, 3, 2, 1};
  MatrixXd s(5, 5);
  s << -rl, -1, 1, 0, 0,
       1, 0, 0, -1, 0,
       -1, 0, 0, 0, -1,
       0, 1, 0, -rg, 0,
       0, 0, 1, 0, -rr;
  MatrixXd r = zeros(5, 5);
  r.diagonal() << rl, 0, 0, rg, rr;
  const MatrixXd j = s + r;
  MatrixXd b = zeros(5, 1);
  b(3, 0) = 1.0;  // source voltage enters the source-resistor loop
  MatrixXd m2 = zeros(3, 3);
  m2.diagonal() << 1.0 / l, 1.0 / c1, 1.0 / c2;
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd z0(5);
  z0 << l * i0, c1 * v10, c2 * v20, v10 / rg, v20 / rr;  // u(0) = 0
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(1), 0.01,
          "linear DC network; branch currents I_G, I_R are algebraic"};
}

/// Two-node circuit with capacitor, inductor, resistor, and a voltage
/// source; node potentials and the source current are algebraic states.
ZooModel build_rlc_nonlinear_circuit(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double cap = pr.positive("capacitance", 1.0);
  const double ind = pr.positive("inductance", 1.0);
  const double res = pr.positive("resistance", 1.0);
  const double psi0 = pr.get("psi0", -1.0);
  pr.done();

  // state: [q_C; psi_L; i_S; phi_1; phi_2]; capacitor and inductor bridge
  // the two nodes, the resistor and the source connect them to ground
  SystemDims dims{1, 1, 3, 1};
  const double g = 1.0 / res;
  MatrixXd s(5, 5);
  s << 0, 0, 0, 1, -1,
       0, 0, 0, 1, -1,
       0, 0, 0, 1, 0,
       -1, -1, -1, 0, 0,
       1, 1, 0, 0, -g;
  MatrixXd r = zeros(5, 5);
  r(4, 4) = g;
  const MatrixXd j = s + r;
  MatrixXd b = zeros(5, 1);
  b(2, 0) = -1.0;  // source voltage pins the source-edge potential drop
  MatrixXd m1(1, 1), m2(1, 1);
  m1 << 1.0 / cap;
  m2 << 1.0 / ind;
  auto energy = std::make_shared<QuadraticEnergy>(m1, m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  // algebraic rows at u(0) = 0: phi_1 = 0, phi_2 = res * psi0 / ind,
  // q_C = cap * (phi_1 - phi_2)
  const double phi2 = res * psi0 / ind;
  VectorXd z0(5);
  z0 << -cap * phi2, psi0, 0.0, 0.0, phi2;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(1), 0.01,
          "two-node circuit in charge/flux coordinates with node potentials"};
}

void mechanics_blocks(MatrixXd& k, MatrixXd& mass, MatrixXd& damp,
                      MatrixXd& bc) {
  k.resize(2, 2);
  k << 2, -0.5, -0.5, 1;
  mass = MatrixXd::Identity(2, 2);
  damp = 0.1 * MatrixXd::Identity(2, 2);
  bc.resize(1, 2);
  bc << 1, 0;
}

/// Linear mechanics with a velocity-level constraint B y = g; states are
/// positions and momenta, the multiplier is algebraic.
ZooModel build_mech_nonholonomic(const ModelSpec& spec) {
  ParamReader pr(spec);
  pr.done();
  MatrixXd k, mass, damp, bc;
  mechanics_blocks(k, mass, damp, bc);

  SystemDims dims{0, 4, 1, 3};
  MatrixXd j = zeros(5, 5), r = zeros(5, 5), b = zeros(5, 3);
  j.block(0, 2, 2, 2) = MatrixXd::Identity(2, 2);
  j.block(2, 0, 2, 2) = -MatrixXd::Identity(2, 2);
  j.block(2, 4, 2, 1) = -bc.transpose();
  j.block(4, 2, 1, 2) = bc;
  r.block(2, 2, 2, 2) = damp;
  b.block(2, 0, 2, 2) = MatrixXd::Identity(2, 2);  // force f
  b(4, 2) = -1.0;                                  // constraint datum g
  MatrixXd m2 = zeros(4, 4);
  m2.topLeftCorner(2, 2) = k;
  m2.bottomRightCorner(2, 2) = mass.inverse();
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd x0(2), y0(2);
  x0 << 1.0, 0.5;
  y0 << 0.0, 1.0;  // Bc y0 = 0
  VectorXd z0(5);
  z0 << x0, mass * y0, 0.0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(3), 0.01,
          "constrained mechanics with a velocity-level constraint"};
}

/// Same mechanics with both the position and velocity constraints kept and
/// two multipliers; channel 3 of the input expects dg/dt, channel 4 g.
ZooModel build_mech_ggl(const ModelSpec& spec) {
  ParamReader pr(spec);
  pr.done();
  MatrixXd k, mass, damp, bc;
  mechanics_blocks(k, mass, damp, bc);

  SystemDims dims{0, 4, 2, 4};
  MatrixXd j = zeros(6, 6), r = zeros(6, 6), b = zeros(6, 4);
  j.block(0, 2, 2, 2) = k;
  j.block(2, 0, 2, 2) = -k;
  j.block(0, 5, 2, 1) = -bc.transpose();
  j.block(5, 0, 1, 2) = bc;
  j.block(2, 4, 2, 1) = -bc.transpose();
  j.block(4, 2, 1, 2) = bc;
  r.block(2, 2, 2, 2) = damp;
  b.block(2, 0, 2, 2) = MatrixXd::Identity(2, 2);  // force f
  b(4, 2) = -1.0;                                  // dg/dt
  b(5, 3) = -1.0;                                  // g
  MatrixXd m2 = zeros(4, 4);
  m2.topLeftCorner(2, 2) = k.inverse();
  m2.bottomRightCorner(2, 2) = mass.inverse();
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd x0(2), y0(2);
  x0 << 0.0, 1.0;  // Bc x0 = 0
  y0 << 0.0, 0.5;  // Bc y0 = 0
  VectorXd z0(6);
  z0 << k * x0, mass * y0, 0.0, 0.0;
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(4), 0.01,
          "constrained mechanics with stabilized position and velocity "
          "constraints and two multipliers"};
}

/// Constrained mechanics with the multiplier folded into the energy through
/// the term <lambda, B x - g>; the whole state sits in the z1 block.
ZooModel build_mech_augmented(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double gval = pr.get("g", 0.0);
  pr.done();
  MatrixXd k, mass, damp, bc;
  mechanics_blocks(k, mass, damp, bc);

  SystemDims dims{5, 0, 0, 2};
  MatrixXd j = zeros(5, 5), r = zeros(5, 5), b = zeros(5, 2);
  j.block(0, 2, 2, 2) = -mass;
  j.block(2, 0, 2, 2) = mass;
  r.topLeftCorner(2, 2) = damp;
  b.topLeftCorner(2, 2) = MatrixXd::Identity(2, 2);
  auto energy = std::make_shared<AugmentedQuadraticEnergy>(
      k, mass, bc, VectorXd::Constant(1, gval));
  auto sys = StructuredSystem::assemble(dims, j, r, b, energy);

  VectorXd z0(5);
  z0 << gval, 1.0, 0.3, -0.2, 0.0;  // Bc x0 = g
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(2), 0.01,
          "constrained mechanics with the constraint carried by the energy"};
}

/// Semi-discrete wave equation on (0,1): nodal momentum density a = rho*w_t
/// and cell strain b = w_x. Skew coupling, no dissipation, no ports.
ZooModel build_vibrating_string(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double rho = pr.positive("density", 1.0);
  const double tension = pr.positive("tension", 1.0);
  const int n = pr.grid_or(32);
  pr.done();

  const MatrixXd d = difference_dirichlet_1d(n, 1.0);
  const double h = 1.0 / (n + 1);
  const int n2 = 2 * n + 1;
  SystemDims dims{0, n2, 0, 0};
  MatrixXd j = zeros(n2, n2);
  j.topRightCorner(n, n + 1) = -(1.0 / h) * d.transpose();
  j.bottomLeftCorner(n + 1, n) = (1.0 / h) * d;
  MatrixXd m2 = zeros(n2, n2);
  m2.diagonal().head(n).setConstant(h / rho);
  m2.diagonal().tail(n + 1).setConstant(h * tension);
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, zeros(n2, n2), zeros(n2, 0),
                                        energy);

  VectorXd w0(n);
  for (int i = 0; i < n; ++i) w0[i] = std::sin(kPi * (i + 1) * h);
  VectorXd z0 = VectorXd::Zero(n2);
  z0.tail(n + 1) = d * w0;  // released from rest at a sine profile
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0), 0.01,
          "semi-discrete wave equation in momentum/strain form"};
}

/// Incompressible viscoelastic flow on a staggered nx-by-nx grid: velocity
/// and stress are states, the cell pressure (one cell pinned) is algebraic.
ZooModel build_viscoelastic_stokes(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double rho = pr.positive("density", 1.0);
  const double eta = pr.positive("viscosity", 1.0);
  const double eps = pr.positive("relaxation", 1.0);
  const int nx = pr.grid_or(6);
  pr.done();

  const MacStokesOperators op = mac_stokes_operators(nx, nx);
  const int nv = op.n_velocity;
  const int ns = op.n_stress;
  const int np = op.n_cells - 1;  // last cell pinned to fix the pressure gauge
  const double w = op.hx * op.hy;
  const MatrixXd p_sel = MatrixXd::Identity(op.n_cells, op.n_cells)
                             .leftCols(np);

  SystemDims dims{0, nv + ns, np, 0};
  const int n = nv + ns + np;
  MatrixXd j = zeros(n, n), r = zeros(n, n);
  j.block(0, nv, nv, ns) = -(1.0 / w) * op.sym_grad.transpose();
  j.block(nv, 0, ns, nv) = (1.0 / w) * op.sym_grad;
  j.block(0, nv + ns, nv, np) = (1.0 / w) * op.div.transpose() * p_sel;
  j.block(nv + ns, 0, np, nv) = -(1.0 / w) * p_sel.transpose() * op.div;
  r.block(nv, nv, ns, ns) =
      op.stress_weights.cwiseInverse().asDiagonal();
  MatrixXd m2 = zeros(nv + ns, nv + ns);
  m2.diagonal().head(nv).setConstant(eta * w / rho);
  m2.diagonal().tail(ns) = op.stress_weights / eps;
  auto energy = std::make_shared<QuadraticEnergy>(zeros(0, 0), m2);
  auto sys = StructuredSystem::assemble(dims, j, r, zeros(n, 0), energy);

  // divergence-free start from a discrete stream function on the corners
  const int nxm = op.nx - 1, nym = op.ny - 1;
  auto psi = [&](int i, int jj) {
    if (i < 0 || i >= nxm || jj < 0 || jj >= nym) return 0.0;
    return std::sin(kPi * (i + 1) * op.hx) * std::sin(kPi * (jj + 1) * op.hy);
  };
  VectorXd vel = VectorXd::Zero(nv);
  for (int jj = 0; jj < op.ny; ++jj)
    for (int i = 0; i < nxm; ++i)
      vel[jj * nxm + i] = (psi(i, jj) - psi(i, jj - 1)) / op.hy;
  const int nu = nxm * op.ny;
  for (int jj = 0; jj < nym; ++jj)
    for (int i = 0; i < op.nx; ++i)
      vel[nu + jj * op.nx + i] = -(psi(i, jj) - psi(i - 1, jj)) / op.hx;

  VectorXd z0 = VectorXd::Zero(n);
  z0.head(nv) = rho * vel;  // stress and pressure start at zero
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0), 0.01,
          "incompressible viscoelastic flow with algebraic cell pressure"};
}

/// Conserved double-well dynamics: u' = -sigma K mu with the chemical
/// potential mu an algebraic z3 variable tied to the energy gradient.
ZooModel build_cahn_hilliard(const ModelSpec& spec) {
  ParamReader pr(spec);
  const double eps = pr.positive("eps", 0.1);
  const double sigma = pr.positive("mobility", 1.0);
  const int n = pr.grid_or(16);
  pr.done();

  const MatrixXd k = stiffness_neumann_1d(n, 1.0);
  const double h = 1.0 / n;
  SystemDims dims{n, 0, n, 0};
  MatrixXd j = zeros(2 * n, 2 * n), r = zeros(2 * n, 2 * n);
  j.topRightCorner(n, n) = MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
  r.bottomRightCorner(n, n) = sigma * k;
  auto energy = std::make_shared<DoubleWellLatticeEnergy>(
      k, eps, VectorXd::Constant(n, h), n, 0);
  auto sys = StructuredSystem::assemble(dims, j, r, zeros(2 * n, 0), energy);

  VectorXd u0(n);
  for (int i = 0; i < n; ++i)
    u0[i] = 0.6 * std::cos(2.0 * kPi * (i + 0.5) * h) + 0.1;
  VectorXd z0(2 * n);
  z0 << u0, energy->gradient(u0);  // mu = dH/du at t = 0
  return {std::move(sys), StatePartition(z0, dims), InputSignal::zero(0), 0.1,
          "mass-conserving double-well dynamics with algebraic potential"};
}

struct Entry {
  const char* name;
  const char* blurb;
  ZooModel (*build)(const ModelSpec&);
};

const Entry kEntries[] = {
    {"ph_iso", "damped harmonic oscillator; params mass, stiffness, damping",
     build_ph_iso},
    {"gradient_flow",
     "gradient flow; params double_well (0/1), eps; grid sets lattice size",
     build_gradient_flow},
    {"poroelasticity",
     "quasi-static elasticity + pressure diffusion; params alpha, storage; "
     "grid sets nodes per field",
     build_poroelasticity},
    {"index1_class", "dense index-1 pair with an algebraic z1 block",
     build_index1_class},
    {"index2_semiexplicit",
     "index-2 semi-explicit DAE; input channels (f1..f3, g)",
     build_index2_semiexplicit},
    {"index2_singular_perturbation",
     "regularized semi-explicit DAE; param eps; input (f1..f3, g)",
     build_index2_singular_perturbation},
    {"index2_derivative_constraint",
     "index-2 DAE constraining the derivative; input (f1..f3, dg/dt)",
     build_index2_derivative_constraint},
    {"dc_network",
     "DC network with algebraic branch currents; params r_source, r_line, "
     "r_load, inductance, c1, c2, i0, v10, v20; input is the source voltage",
     build_dc_network},
    {"rlc_nonlinear_circuit",
     "two-node circuit with node potentials; params capacitance, inductance, "
     "resistance, q0; input is the source voltage",
     build_rlc_nonlinear_circuit},
    {"mech_nonholonomic",
     "mechanics with a velocity-level constraint; input (f1, f2, g)",
     build_mech_nonholonomic},
    {"mech_ggl",
     "mechanics with stabilized position/velocity constraints; input "
     "(f1, f2, dg/dt, g)",
     build_mech_ggl},
    {"mech_augmented",
     "mechanics with the constraint in the energy; param g; input (f1, f2)",
     build_mech_augmented},
    {"vibrating_string",
     "semi-discrete wave equation; params density, tension; grid sets nodes",
     build_vibrating_string},
    {"viscoelastic_stokes",
     "incompressible viscoelastic flow on a staggered grid; params density, "
     "viscosity, relaxation; grid sets cells per side",
     build_viscoelastic_stokes},
    {"cahn_hilliard",
     "conserved double-well dynamics; params eps, mobility; grid sets cells",
     build_cahn_hilliard},
};

const Entry& find_entry(const std::string& name) {
  for (const auto& e : kEntries)
    if (name == e.name) return e;
  fail(ErrorCode::UnknownModel, "no model named '" + name + "'");
}

}  // namespace

ZooModel build_model(const ModelSpec& spec) {
  return find_entry(spec.name).build(spec);
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

std::string zoo_describe(const std::string& name) {
  const Entry& e = find_entry(name);
  ModelSpec spec;
  spec.name = name;
  const ZooModel model = build_model(spec);
  const auto& d = model.system.dims();
  std::string out = std::string(e.name) + ": " + e.blurb;
  out += "\n  dims: n1=" + std::to_string(d.n1) + " n2=" + std::to_string(d.n2) +
         " n3=" + std::to_string(d.n3) + " m=" + std::to_string(d.m);
  out += "\n  default tau: " + std::to_string(model.default_tau);
  out += "\n  " + model.notes;
  return out;
}

}  // namespace dissipact
