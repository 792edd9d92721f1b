#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <string>
#include <unistd.h>

#include "core/io.hpp"
#include "core/zoo.hpp"

using namespace dissipact;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int c = 0;
    path = fs::temp_directory_path() /
           ("dissipact_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(c++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult cli(const std::string& args, const TempDir& dir) {
  const std::string out_path = dir.file("stdout.txt");
  const std::string cmd = std::string(DISSIPACT_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + dir.file("stderr.txt");
  const int rc = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = read_text_file(out_path);
  return res;
}

void write_config(const std::string& path, const std::string& model,
                  const std::string& out_dir, const std::string& extra = "") {
  std::ofstream cfg(path);
  cfg << "[model]\nname = " << model << "\n[grid]\nt_end = 1\ntau = 0.01\n"
      << "[outputs]\ndir = " << out_dir << "\n" << extra;
}

}  // namespace

TEST_CASE("zoo list prints all model names") {
  TempDir dir;
  const auto res = cli("zoo list", dir);
  CHECK(res.exit_code == 0);
  for (const auto& name : zoo_names())
    CHECK(res.out.find(name + "\n") != std::string::npos);
}

TEST_CASE("zoo describe prints dimensions; unknown names fail") {
  TempDir dir;
  const auto res = cli("zoo describe vibrating_string", dir);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("dims") != std::string::npos);
  CHECK(cli("zoo describe nothing_here", dir).exit_code == 1);
}

TEST_CASE("run executes a config and writes artifacts") {
  TempDir dir;
  const std::string cfg = dir.file("osc.cfg");
  write_config(cfg, "ph_iso", dir.file("out"), "check = dissipation\n");
  const auto res = cli("run " + cfg, dir);
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(dir.file("out/trajectory.csv")));
  CHECK(fs::exists(dir.file("out/report.json")));
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir dir;
  const std::string cfg = dir.file("net.cfg");
  write_config(cfg, "dc_network", dir.file("out"));
  REQUIRE(cli("run " + cfg, dir).exit_code == 0);
  const std::string first = read_text_file(dir.file("out/trajectory.csv"));
  const std::string first_energy = read_text_file(dir.file("out/energy.csv"));
  REQUIRE(cli("run " + cfg, dir).exit_code == 0);
  CHECK(read_text_file(dir.file("out/trajectory.csv")) == first);
  CHECK(read_text_file(dir.file("out/energy.csv")) == first_energy);
}

TEST_CASE("command-line flags override the config") {
  TempDir dir;
  const std::string cfg = dir.file("osc.cfg");
  write_config(cfg, "ph_iso", dir.file("ignored"));
  const auto res = cli("run " + cfg + " --tau 0.1 --t-end 0.5 --out-dir " +
                           dir.file("flagged") + " --scheme discrete-gradient",
                       dir);
  CHECK(res.exit_code == 0);
  const std::string csv = read_text_file(dir.file("flagged/trajectory.csv"));
  // 5 steps -> 6 state rows plus the header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK_FALSE(fs::exists(dir.file("ignored")));
}

TEST_CASE("batch runs fan out into per-config directories") {
  TempDir dir;
  const std::string c1 = dir.file("one.cfg"), c2 = dir.file("two.cfg");
  write_config(c1, "ph_iso", dir.file("unused1"));
  write_config(c2, "dc_network", dir.file("unused2"));
  const auto res =
      cli("run " + c1 + " " + c2 + " --jobs 2 --out-dir " + dir.file("batch"),
          dir);
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(dir.file("batch/one/trajectory.csv")));
  CHECK(fs::exists(dir.file("batch/two/trajectory.csv")));
}

TEST_CASE("validate follows the exit-code contract") {
  TempDir dir;
  auto model = build_model({"ph_iso", {}, 0});
  const std::string good = dir.file("good.dsys");
  write_system_file(good, model.system, model.z0, model.default_input);
  CHECK(cli("validate " + good, dir).exit_code == 0);

  const std::string bad = dir.file("bad.dsys");
  write_text_file(bad,
                  "dissipact-system 1\n"
                  "dims 0 2 0 0\n"
                  "J 2 2\n0 0\n0 0\n"
                  "R 2 2\n-1 0\n0 -1\n"
                  "B 2 0\n"
                  "energy quadratic\nM1 0 0\nM2 2 2\n1 0\n0 1\nz0 2\n1 0\n"
                  "input zero 0\nend\n");
  CHECK(cli("validate " + bad, dir).exit_code == 2);

  write_text_file(dir.file("junk.dsys"), "junk\n");
  CHECK(cli("validate " + dir.file("junk.dsys"), dir).exit_code == 1);
  CHECK(cli("validate " + dir.file("missing.dsys"), dir).exit_code != 0);
}

TEST_CASE("running a structurally invalid system file exits 1") {
  TempDir dir;
  const std::string bad = dir.file("bad.dsys");
  write_text_file(bad,
                  "dissipact-system 1\n"
                  "dims 0 2 0 0\n"
                  "J 2 2\n0 0\n0 0\n"
                  "R 2 2\n-1 0\n0 -1\n"
                  "B 2 0\n"
                  "energy quadratic\nM1 0 0\nM2 2 2\n1 0\n0 1\nz0 2\n1 0\n"
                  "input zero 0\nend\n");
  const std::string cfg = dir.file("bad.cfg");
  std::ofstream(cfg) << "[model]\nfile = " << bad
                     << "\n[outputs]\ndir = " << dir.file("out") << "\n";
  CHECK(cli("run " + cfg, dir).exit_code == 1);
}

TEST_CASE("usage errors do not masquerade as check failures") {
  TempDir dir;
  CHECK(cli("frobnicate", dir).exit_code == 1);
  CHECK(cli("run " + dir.file("missing.cfg"), dir).exit_code != 0);
}
