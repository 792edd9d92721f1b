#include <doctest.h>

#include "core/config.hpp"

using namespace dissipact;

namespace {

const char* kBasic =
    "[model]\n"
    "name = ph_iso\n"
    "param.damping = 0.25\n"
    "\n"
    "[grid]\n"
    "t_end = 2\n"
    "tau = 0.05\n"
    "\n"
    "[outputs]\n"
    "dir = /tmp/run\n"
    "check = dissipation\n";

}  // namespace

TEST_CASE("basic config parses with defaults filled in") {
  const RunSpec spec = parse_config(kBasic);
  CHECK(spec.model_name == "ph_iso");
  CHECK(spec.params.at("damping") == 0.25);
  CHECK(spec.grid.t0 == 0.0);
  CHECK(spec.grid.t_end == 2.0);
  CHECK(spec.grid.tau == 0.05);
  CHECK(spec.scheme == Scheme::Midpoint);
  CHECK(spec.check == CheckKind::Dissipation);
  CHECK(spec.outputs.dir == "/tmp/run");
  CHECK(spec.outputs.trajectory_csv);
  CHECK(spec.input.kind == SignalKind::Zero);
}

TEST_CASE("serialization round-trips every representable field") {
  RunSpec spec = parse_config(kBasic);
  spec.scheme = Scheme::DiscreteGradient;
  spec.solver.abs_tol = 1e-13;
  spec.solver.max_iters = 40;
  spec.seed = 77;
  spec.input.kind = SignalKind::Sinusoid;
  spec.input.amplitude = VectorXd::Constant(1, 2.0);
  spec.input.omega = VectorXd::Constant(1, 3.0);
  spec.input.phase = VectorXd::Zero(1);
  const RunSpec back = parse_config(serialize_config(spec));
  CHECK(back == spec);

  // and a system-file flavored spec
  RunSpec file_spec;
  file_spec.system_path = "model.dsys";
  file_spec.grid = TimeGrid{0.5, 3.0, 0.1};
  file_spec.check = CheckKind::Full;
  file_spec.outputs.energy_csv = false;
  CHECK(parse_config(serialize_config(file_spec)) == file_spec);
}

TEST_CASE("piecewise inputs round-trip through the list syntax") {
  RunSpec spec = parse_config(kBasic);
  spec.input.kind = SignalKind::PiecewiseLinear;
  spec.input.times = {0.0, 1.0, 2.0};
  spec.input.values = {VectorXd::Zero(1), VectorXd::Constant(1, 2.0),
                       VectorXd::Constant(1, 1.0)};
  const RunSpec back = parse_config(serialize_config(spec));
  CHECK(back == spec);
  const InputSignal sig = back.input.instantiate(1);
  CHECK(sig(0.5)[0] == doctest::Approx(1.0));
}

TEST_CASE("unknown keys and sections are rejected") {
  try {
    parse_config("[model]\nname = ph_iso\ntypo = 1\n");
    FAIL("expected UnknownKey");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownKey);
  }
  CHECK_THROWS_AS(parse_config("[mystery]\nx = 1\n"), Error);
}

TEST_CASE("malformed lines carry a location") {
  try {
    parse_config("[model]\nname ph_iso\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("semantic validation happens after parsing") {
  // negative time step
  try {
    parse_config("[model]\nname = ph_iso\n[grid]\ntau = -0.1\n");
    FAIL("expected InvalidValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidValue);
  }
  // model and file at once
  CHECK_THROWS_AS(parse_config("[model]\nname = ph_iso\nfile = x.dsys\n"),
                  Error);
  // neither
  CHECK_THROWS_AS(parse_config("[grid]\ntau = 0.1\n"), Error);
  // non-numeric value
  CHECK_THROWS_AS(parse_config("[model]\nname = ph_iso\n[grid]\ntau = abc\n"),
                  Error);
}

TEST_CASE("comments and blank lines are ignored") {
  const RunSpec spec = parse_config(
      "# leading comment\n"
      "[model]\n"
      "; alternative comment\n"
      "name = ph_iso\n"
      "\n");
  CHECK(spec.model_name == "ph_iso");
}

TEST_CASE("scheme and check names map both ways") {
  CHECK(scheme_from_name("midpoint") == Scheme::Midpoint);
  CHECK(scheme_from_name("discrete-gradient") == Scheme::DiscreteGradient);
  CHECK(scheme_name(Scheme::DiscreteGradient) == "discrete-gradient");
  CHECK(check_from_name("none") == CheckKind::None);
  CHECK(check_from_name("full") == CheckKind::Full);
  CHECK(check_name(CheckKind::Dissipation) == "dissipation");
  CHECK_THROWS_AS(scheme_from_name("euler"), Error);
  CHECK_THROWS_AS(check_from_name("maybe"), Error);
}
