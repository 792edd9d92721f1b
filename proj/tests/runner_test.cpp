#include <doctest.h>

#include <filesystem>
#include <unistd.h>

#include "core/io.hpp"
#include "core/runner.hpp"
#include "core/zoo.hpp"

using namespace dissipact;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int c = 0;
    path = fs::temp_directory_path() /
           ("dissipact_run_" + std::to_string(::getpid()) + "_" +
            std::to_string(c++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

RunSpec basic_spec(const TempDir& dir) {
  RunSpec spec;
  spec.model_name = "ph_iso";
  spec.grid = TimeGrid{0.0, 1.0, 0.01};
  spec.outputs.dir = dir.file("out");
  return spec;
}

}  // namespace

TEST_CASE("run writes the requested artifacts and passes its check") {
  TempDir dir;
  RunSpec spec = basic_spec(dir);
  spec.check = CheckKind::Full;
  const auto outcome = run(spec);
  CHECK(outcome.exit_code == 0);
  CHECK(fs::exists(dir.file("out/trajectory.csv")));
  CHECK(fs::exists(dir.file("out/output.csv")));
  CHECK(fs::exists(dir.file("out/energy.csv")));
  CHECK(fs::exists(dir.file("out/report.json")));
  const std::string rep = read_text_file(dir.file("out/report.json"));
  CHECK(rep.find("\"max_violation\"") != std::string::npos);
  CHECK(rep.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("artifact toggles are honored") {
  TempDir dir;
  RunSpec spec = basic_spec(dir);
  spec.outputs.energy_csv = false;
  spec.outputs.report_json = false;
  CHECK(run(spec).exit_code == 0);
  CHECK(fs::exists(dir.file("out/trajectory.csv")));
  CHECK_FALSE(fs::exists(dir.file("out/energy.csv")));
  CHECK_FALSE(fs::exists(dir.file("out/report.json")));
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
  TempDir dir;
  RunSpec spec = basic_spec(dir);
  CHECK(run(spec).exit_code == 0);
  const std::string first = read_text_file(dir.file("out/trajectory.csv"));
  CHECK(run(spec).exit_code == 0);
  CHECK(read_text_file(dir.file("out/trajectory.csv")) == first);
}

TEST_CASE("unknown model surfaces as exit 1") {
  TempDir dir;
  RunSpec spec = basic_spec(dir);
  spec.model_name = "no_such_model";
  const auto outcome = run(spec);
  CHECK(outcome.exit_code == 1);
  CHECK_FALSE(outcome.message.empty());
}

TEST_CASE("runs from a system file honor the stored input") {
  TempDir dir;
  auto model = build_model({"dc_network", {}, 0});
  const std::string path = dir.file("net.dsys");
  write_system_file(path, model.system, model.z0, model.default_input);
  RunSpec spec;
  spec.system_path = path;
  spec.grid = TimeGrid{0.0, 1.0, 0.01};
  spec.outputs.dir = dir.file("out");
  spec.check = CheckKind::Dissipation;
  CHECK(run(spec).exit_code == 0);
}

TEST_CASE("validate_system_file distinguishes bad files from bad structure") {
  TempDir dir;
  auto model = build_model({"ph_iso", {}, 0});
  const std::string good = dir.file("good.dsys");
  write_system_file(good, model.system, model.z0, model.default_input);
  CHECK(validate_system_file(good).exit_code == 0);

  // well-formed file whose R has a negative eigenvalue
  const std::string bad = dir.file("bad.dsys");
  write_text_file(bad,
                  "dissipact-system 1\n"
                  "dims 0 2 0 0\n"
                  "J 2 2\n0 0\n0 0\n"
                  "R 2 2\n-1 0\n0 -1\n"
                  "B 2 0\n"
                  "energy quadratic\nM1 0 0\nM2 2 2\n1 0\n0 1\nz0 2\n1 0\n"
                  "input zero 0\nend\n");
  const auto outcome = validate_system_file(bad);
  CHECK(outcome.exit_code == 2);
  CHECK(outcome.message.find("StructureViolation") != std::string::npos);

  // not parseable at all
  write_text_file(dir.file("junk.dsys"), "junk\n");
  CHECK(validate_system_file(dir.file("junk.dsys")).exit_code == 1);
  CHECK(validate_system_file(dir.file("missing.dsys")).exit_code == 1);
}

TEST_CASE("a failed dissipation certificate exits with code 2") {
  // a conservative double-well oscillator: midpoint drifts in energy and
  // breaks the certificate, the discrete gradient keeps it exactly
  TempDir dir;
  const std::string path = dir.file("well.dsys");
  write_text_file(path,
                  "dissipact-system 1\n"
                  "dims 0 2 0 0\n"
                  "J 2 2\n0 1\n-1 0\n"
                  "R 2 2\n0 0\n0 0\n"
                  "B 2 0\n"
                  "energy double-well 0 2 1\n"
                  "K 2 2\n1 0\n0 1\nw 2\n1 1\n"
                  "z0 2\n1.5 0\ninput zero 0\nend\n");
  RunSpec spec;
  spec.system_path = path;
  spec.grid = TimeGrid{0.0, 10.0, 0.1};
  spec.check = CheckKind::Dissipation;
  spec.outputs.dir = dir.file("mid");
  spec.scheme = Scheme::Midpoint;
  const auto mid = run(spec);
  spec.outputs.dir = dir.file("dg");
  spec.scheme = Scheme::DiscreteGradient;
  const auto dg = run(spec);
  CHECK(dg.exit_code == 0);
  CHECK(mid.exit_code == 2);
  CHECK(mid.message.find("dissipation") != std::string::npos);
}
