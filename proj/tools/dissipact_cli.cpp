// Command-line front end; talks to the library exclusively through the
// public C API.
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dissipact/dissipact.h"

namespace {

struct RunFlags {
  double tau = 0.0;
  double t_end = 0.0;
  bool has_t_end = false;
  std::string scheme;
  std::string check;
  std::string out_dir;
  long long seed = -1;
};

dsp_overrides make_overrides(const RunFlags& flags, const std::string& dir) {
  dsp_overrides ov;
  dsp_overrides_init(&ov);
  if (!dir.empty()) ov.out_dir = dir.c_str();
  if (!flags.scheme.empty()) ov.scheme = flags.scheme.c_str();
  if (!flags.check.empty()) ov.check = flags.check.c_str();
  if (flags.tau > 0.0) ov.tau = flags.tau;
  if (flags.has_t_end) {
    ov.t_end = flags.t_end;
    ov.has_t_end = 1;
  }
  if (flags.seed >= 0) {
    ov.seed = static_cast<unsigned long>(flags.seed);
    ov.has_seed = 1;
  }
  return ov;
}

int run_configs(const std::vector<std::string>& configs, const RunFlags& flags,
                int jobs) {
  // Isolated output directories per config when one --out-dir covers many.
  std::vector<std::string> dirs(configs.size());
  for (size_t i = 0; i < configs.size(); ++i) {
    if (flags.out_dir.empty())
      dirs[i] = "";
    else if (configs.size() == 1)
      dirs[i] = flags.out_dir;
    else
      dirs[i] = flags.out_dir + "/" +
                std::filesystem::path(configs[i]).stem().string();
  }

  std::atomic<size_t> next{0};
  std::atomic<int> worst{0};
  std::mutex print_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      const dsp_overrides ov = make_overrides(flags, dirs[i]);
      int code = 1;
      char msg[1024] = {0};
      if (dsp_run_config_file(configs[i].c_str(), &ov, &code, msg,
                              sizeof msg) != DSP_OK) {
        std::snprintf(msg, sizeof msg, "%s", dsp_last_error());
        code = 1;
      }
      {
        std::lock_guard<std::mutex> lock(print_mutex);
        if (code == 0)
          std::printf("%s: ok\n", configs[i].c_str());
        else
          std::fprintf(stderr, "%s: exit %d%s%s\n", configs[i].c_str(), code,
                       msg[0] ? ": " : "", msg);
      }
      int cur = worst.load();
      while (code > cur && !worst.compare_exchange_weak(cur, code)) {
      }
    }
  };

  const int nthreads =
      std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return worst.load();
}

int validate_file(const std::string& path) {
  int code = 1;
  char msg[1024] = {0};
  if (dsp_validate_file(path.c_str(), &code, msg, sizeof msg) != DSP_OK) {
    std::fprintf(stderr, "%s\n", dsp_last_error());
    return 1;
  }
  if (code == 0)
    std::printf("%s: %s\n", path.c_str(), msg);
  else
    std::fprintf(stderr, "%s: %s\n", path.c_str(), msg);
  return code;
}

int zoo_list() {
  const int n = dsp_zoo_count();
  for (int i = 0; i < n; ++i) std::printf("%s\n", dsp_zoo_name(i));
  return 0;
}

int zoo_describe(const std::string& name) {
  char buf[4096] = {0};
  if (dsp_zoo_describe(name.c_str(), buf, sizeof buf) != DSP_OK) {
    std::fprintf(stderr, "%s\n", dsp_last_error());
    return 1;
  }
  std::printf("%s\n", buf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured dissipative system runner"};
  app.require_subcommand(1);

  RunFlags flags;
  std::vector<std::string> configs;
  int jobs = 1;
  auto* run_cmd = app.add_subcommand("run", "run one or more config files");
  run_cmd->add_option("config", configs, "config file(s)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--tau", flags.tau, "override the time step");
  auto* tend_opt =
      run_cmd->add_option("--t-end", flags.t_end, "override the end time");
  run_cmd->add_option("--scheme", flags.scheme,
                      "midpoint or discrete-gradient");
  run_cmd->add_option("--check", flags.check, "none, dissipation, or full");
  run_cmd->add_option("--out-dir", flags.out_dir, "output directory");
  run_cmd->add_option("--seed", flags.seed, "seed for randomized checks");
  run_cmd->add_option("--jobs", jobs, "run configs concurrently")
      ->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "validate a system file");
  validate_cmd->add_option("file", validate_path, "system file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* zoo_cmd = app.add_subcommand("zoo", "inspect the model zoo");
  zoo_cmd->require_subcommand(1);
  auto* list_cmd = zoo_cmd->add_subcommand("list", "list model names");
  std::string describe_name;
  auto* describe_cmd = zoo_cmd->add_subcommand("describe", "describe a model");
  describe_cmd->add_option("name", describe_name, "model name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (run_cmd->parsed()) {
    flags.has_t_end = tend_opt->count() > 0;
    return run_configs(configs, flags, jobs);
  }
  if (validate_cmd->parsed()) return validate_file(validate_path);
  if (list_cmd->parsed()) return zoo_list();
  if (describe_cmd->parsed()) return zoo_describe(describe_name);
  return 1;
}
