#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "core/io.hpp"
#include "core/zoo.hpp"

using namespace dissipact;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dissipact_io_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

double max_abs_diff(const MatrixXd& a, const MatrixXd& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("system serialization round-trips bit-exactly") {
  for (const char* name :
       {"ph_iso", "dc_network", "mech_augmented", "cahn_hilliard",
        "index2_singular_perturbation"}) {
    INFO(name);
    auto model = build_model({name, {}, 0});
    const std::string text =
        serialize_system(model.system, model.z0, model.default_input);
    auto loaded = parse_system(text);
    CHECK(max_abs_diff(loaded.system.j(), model.system.j()) == 0.0);
    CHECK(max_abs_diff(loaded.system.r(), model.system.r()) == 0.0);
    CHECK(max_abs_diff(loaded.system.b(), model.system.b()) == 0.0);
    CHECK((loaded.z0.z - model.z0.z).cwiseAbs().maxCoeff() == 0.0);
    CHECK(loaded.system.dims() == model.system.dims());
    CHECK(loaded.input.kind() == model.default_input.kind());
    // the reloaded energy evaluates identically
    CHECK(loaded.system.energy().value(model.z0.x12()) ==
          model.system.energy().value(model.z0.x12()));
    // serializing again reproduces the same bytes
    CHECK(serialize_system(loaded.system, loaded.z0, loaded.input) == text);
  }
}

TEST_CASE("system files survive the disk") {
  TempDir dir;
  auto model = build_model({"index1_class", {}, 0});
  const std::string path = dir.file("sys.dsys");
  write_system_file(path, model.system, model.z0, model.default_input);
  auto loaded = load_system_file(path);
  CHECK((loaded.system.jr() - model.system.jr()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(load_system_file(dir.file("missing.dsys")), Error);
}

TEST_CASE("dimension mismatches in files are reported") {
  auto model = build_model({"ph_iso", {}, 0});
  std::string text =
      serialize_system(model.system, model.z0, model.default_input);
  // claim an extra z3 variable without growing the matrices
  const auto pos = text.find("dims 0 2 0 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "dims 0 2 1 1");
  try {
    parse_system(text);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("garbage input yields a parse error with a location") {
  try {
    parse_system("dissipact-system 1\ndims 0 2 0\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_system("not a system file\n"), Error);
  CHECK_THROWS_AS(parse_system("dissipact-system 99\n"), Error);
}

TEST_CASE("hand-authored oscillator file matches the built-in model") {
  const std::string text =
      "dissipact-system 1\n"
      "dims 0 2 0 1\n"
      "J 2 2\n0 1\n-1 0\n"
      "R 2 2\n0 0\n0 0.10000000000000001\n"
      "B 2 1\n0\n1\n"
      "energy quadratic\nM1 0 0\nM2 2 2\n1 0\n0 1\nz0 2\n1 0\n"
      "input zero 1\nend\n";
  auto loaded = parse_system(text);
  auto model = build_model({"ph_iso", {}, 0});
  TimeGrid grid{0.0, 2.0, 0.01};
  auto a = integrate(loaded.system, loaded.z0, loaded.input, grid,
                     Scheme::Midpoint);
  auto b = integrate(model.system, model.z0, model.default_input, grid,
                     Scheme::Midpoint);
  double worst = 0.0;
  for (size_t n = 0; n < a.states.size(); ++n)
    worst = std::max(worst, (a.states[n] - b.states[n]).norm());
  CHECK(worst < 1e-12);
}

TEST_CASE("format_double prints shortest round-trip decimals") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  const double v = 0.3141592653589793;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("csv artifacts are deterministic and well-formed") {
  TempDir dir;
  auto model = build_model({"ph_iso", {}, 0});
  TimeGrid grid{0.0, 0.5, 0.05};
  auto traj = integrate(model.system, model.z0, model.default_input, grid,
                        Scheme::Midpoint);
  const std::string p1 = dir.file("a.csv"), p2 = dir.file("b.csv");
  write_trajectory_csv(p1, traj);
  write_trajectory_csv(p2, traj);
  const std::string t1 = read_text_file(p1);
  CHECK(t1 == read_text_file(p2));
  CHECK(t1.rfind("t,z2[0],z2[1],H", 0) == 0);
  // one header plus one row per state
  CHECK(std::count(t1.begin(), t1.end(), '\n') ==
        1 + static_cast<long>(traj.states.size()));

  write_output_csv(dir.file("y.csv"), traj);
  const std::string ty = read_text_file(dir.file("y.csv"));
  CHECK(ty.rfind("t_mid,y[0]", 0) == 0);
  write_energy_csv(dir.file("h.csv"), traj);
  CHECK(read_text_file(dir.file("h.csv")).rfind("t,H", 0) == 0);
}

TEST_CASE("report json carries the validation and dissipation blocks") {
  auto model = build_model({"ph_iso", {}, 0});
  TimeGrid grid{0.0, 1.0, 0.1};
  auto traj = integrate(model.system, model.z0, model.default_input, grid,
                        Scheme::Midpoint);
  auto val = model.system.validate();
  auto dis = dissipation_report(model.system, traj, model.default_input);
  const double grad_err = 1.5e-9;
  const std::string doc = report_json(val, &dis, &grad_err);
  CHECK(doc.find("\"structure\"") != std::string::npos);
  CHECK(doc.find("\"dissipation\"") != std::string::npos);
  CHECK(doc.find("\"max_violation\"") != std::string::npos);
  CHECK(doc.find("\"gradient_check_error\"") != std::string::npos);
  const std::string bare = report_json(val, nullptr, nullptr);
  CHECK(bare.find("\"dissipation\"") == std::string::npos);
}
