#include "core/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>

#include "core/diagnostics.hpp"
#include "core/io.hpp"
#include "core/zoo.hpp"

namespace dissipact {

namespace {

struct ResolvedModel {
  StructuredSystem system;
  StatePartition z0;
  InputSignal input;
};

ResolvedModel resolve(const RunSpec& spec) {
  if (!spec.model_name.empty()) {
    ModelSpec ms{spec.model_name, spec.params, spec.grid_points};
    ZooModel model = build_model(ms);
    InputSignal input = spec.input.kind == SignalKind::Zero
                            ? model.default_input
                            : spec.input.instantiate(model.system.dims().m);
    return {std::move(model.system), std::move(model.z0), std::move(input)};
  }
  LoadedSystem loaded = load_system_file(spec.system_path);
  InputSignal input = spec.input.kind == SignalKind::Zero
                          ? loaded.input
                          : spec.input.instantiate(loaded.system.dims().m);
  return {std::move(loaded.system), std::move(loaded.z0), std::move(input)};
}

void log_line(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "%s\n", msg.c_str());
}

}  // namespace

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("DISSIPACT_LOG");
    if (!env) return 1;
    if (!std::strcmp(env, "0") || !std::strcmp(env, "quiet") ||
        !std::strcmp(env, "off"))
      return 0;
    if (!std::strcmp(env, "2") || !std::strcmp(env, "debug")) return 2;
    return 1;
  }();
  return level;
}

RunOutcome run(const RunSpec& spec) {
  try {
    ResolvedModel model = resolve(spec);
    const ValidationReport validation = model.system.validate();

    const StatePartition z0 = consistent_initialization(
        model.system, model.z0, model.input(spec.grid.t0), spec.solver);

    int next_mark = 10;
    auto progress = [&](int done, int total) {
      const int pct = static_cast<int>(100.0 * done / total);
      while (pct >= next_mark) {
        log_line("progress " + std::to_string(next_mark) + "% (" +
                 std::to_string(done) + "/" + std::to_string(total) +
                 " steps)");
        next_mark += 10;
      }
    };
    const Trajectory traj =
        integrate(model.system, z0, model.input, spec.grid, spec.scheme,
                  spec.solver, DiscreteGradientKind::GonzalezMidpoint,
                  log_level() >= 1 ? std::function<void(int, int)>(progress)
                                   : nullptr);

    namespace fs = std::filesystem;
    fs::create_directories(spec.outputs.dir);
    const std::string dir = spec.outputs.dir + "/";
    if (spec.outputs.trajectory_csv) {
      write_trajectory_csv(dir + "trajectory.csv", traj);
      write_output_csv(dir + "output.csv", traj);
    }
    if (spec.outputs.energy_csv) write_energy_csv(dir + "energy.csv", traj);

    bool pass = true;
    std::string why;
    DissipationReport dissipation;
    double grad_err = 0.0;
    const bool want_dissipation = spec.check != CheckKind::None;
    if (want_dissipation) {
      dissipation = dissipation_report(model.system, traj, model.input);
      if (dissipation.max_violation > dissipation.tolerance) {
        pass = false;
        why = "dissipation violated: max " +
              format_double(dissipation.max_violation) + " > tol " +
              format_double(dissipation.tolerance);
      }
    }
    if (spec.check == CheckKind::Full && pass) {
      if (!validation.passed) {
        pass = false;
        why = "structure validation failed";
      } else {
        grad_err = gradient_fd_check(model.system.energy(), 100, 1e-6,
                                     spec.seed + 1);
        if (grad_err > 1e-6) {
          pass = false;
          why = "gradient self-check error " + format_double(grad_err);
        }
      }
    }

    if (spec.outputs.report_json) {
      write_text_file(
          dir + "report.json",
          report_json(validation, want_dissipation ? &dissipation : nullptr,
                      spec.check == CheckKind::Full ? &grad_err : nullptr));
    }

    if (!pass) return {2, "check failed: " + why};
    return {0, ""};
  } catch (const Error& e) {
    return {1, std::string(error_code_name(e.code())) + ": " + e.what()};
  } catch (const std::exception& e) {
    return {1, e.what()};
  }
}

RunOutcome validate_system_file(const std::string& path) {
  try {
    const LoadedSystem loaded = load_system_file(path);
    const ValidationReport rep = loaded.system.validate();
    if (!rep.passed)
      return {2, "structure validation failed: skew defect " +
                     format_double(rep.skew_defect) + ", sym defect " +
                     format_double(rep.sym_defect) + ", min eig(R) " +
                     format_double(rep.min_eig_r)};
    return {0, "structure validation passed: min eig(R) " +
                   format_double(rep.min_eig_r)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StructureViolation)
      return {2, std::string(error_code_name(e.code())) + ": " + e.what()};
    return {1, std::string(error_code_name(e.code())) + ": " + e.what()};
  } catch (const std::exception& e) {
    return {1, e.what()};
  }
}

}  // namespace dissipact
