#include "dissipact/dissipact.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "core/diagnostics.hpp"
#include "core/io.hpp"
#include "core/runner.hpp"
#include "core/zoo.hpp"

namespace {

using namespace dissipact;

thread_local std::string g_last_error = "no error";

dsp_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return DSP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::StructureViolation: return DSP_ERR_STRUCTURE_VIOLATION;
    case ErrorCode::NewtonDivergence: return DSP_ERR_NEWTON_DIVERGENCE;
    case ErrorCode::SingularJacobian: return DSP_ERR_SINGULAR_JACOBIAN;
    case ErrorCode::IllegalKind: return DSP_ERR_ILLEGAL_KIND;
    case ErrorCode::NonQuadraticEnergy: return DSP_ERR_NON_QUADRATIC_ENERGY;
    case ErrorCode::RankDeficientBasis: return DSP_ERR_RANK_DEFICIENT_BASIS;
    case ErrorCode::SingularReducedMass: return DSP_ERR_SINGULAR_REDUCED_MASS;
    case ErrorCode::InconsistentInitialData:
      return DSP_ERR_INCONSISTENT_INITIAL_DATA;
    case ErrorCode::TrajectoryMismatch: return DSP_ERR_TRAJECTORY_MISMATCH;
    case ErrorCode::NoAlgebraicRows: return DSP_ERR_NO_ALGEBRAIC_ROWS;
    case ErrorCode::UnknownModel: return DSP_ERR_UNKNOWN_MODEL;
    case ErrorCode::InvalidParams: return DSP_ERR_INVALID_PARAMS;
    case ErrorCode::ParseError: return DSP_ERR_PARSE;
    case ErrorCode::UnknownKey: return DSP_ERR_UNKNOWN_KEY;
    case ErrorCode::InvalidValue: return DSP_ERR_INVALID_VALUE;
    case ErrorCode::IoError: return DSP_ERR_IO;
  }
  return DSP_ERR_INTERNAL;
}

dsp_status set_error(dsp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

dsp_status invalid_argument(const char* what) {
  return set_error(DSP_ERR_INVALID_ARGUMENT, what);
}

template <typename Fn>
dsp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return set_error(status_of(e.code()),
                     std::string(error_code_name(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    return set_error(DSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(DSP_ERR_INTERNAL, "unknown failure");
  }
}

void copy_message(char* buf, size_t cap, const std::string& text) {
  if (!buf || cap == 0) return;
  const size_t n = std::min(cap - 1, text.size());
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

}  // namespace

struct dsp_model {
  dissipact::StructuredSystem system;
  dissipact::StatePartition z0;
  dissipact::InputSignal input;
  double default_tau;
};

struct dsp_trajectory {
  dissipact::Trajectory traj;
  dissipact::InputSignal input;  // input the trajectory was produced with
};

extern "C" {

const char* dsp_last_error(void) { return g_last_error.c_str(); }

int dsp_zoo_count(void) { return static_cast<int>(zoo_names().size()); }

const char* dsp_zoo_name(int index) {
  const auto& names = zoo_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<size_t>(index)].c_str();
}

dsp_status dsp_zoo_describe(const char* name, char* buf, size_t cap) {
  if (!name || !buf || cap == 0)
    return invalid_argument("dsp_zoo_describe: bad argument");
  return guarded([&] {
    copy_message(buf, cap, zoo_describe(name));
    return DSP_OK;
  });
}

dsp_status dsp_model_from_zoo(const char* name, const char* const* keys,
                              const double* values, int nparams, int grid,
                              dsp_model** out) {
  if (!name || !out || nparams < 0 || (nparams > 0 && (!keys || !values)))
    return invalid_argument("dsp_model_from_zoo: bad argument");
  *out = nullptr;
  return guarded([&] {
    ModelSpec spec;
    spec.name = name;
    spec.grid = grid;
    for (int i = 0; i < nparams; ++i) {
      if (!keys[i]) fail(ErrorCode::InvalidParams, "null parameter key");
      spec.params[keys[i]] = values[i];
    }
    ZooModel model = build_model(spec);
    *out = new dsp_model{std::move(model.system), std::move(model.z0),
                         std::move(model.default_input), model.default_tau};
    return DSP_OK;
  });
}

dsp_status dsp_model_load(const char* path, dsp_model** out) {
  if (!path || !out) return invalid_argument("dsp_model_load: bad argument");
  *out = nullptr;
  return guarded([&] {
    LoadedSystem loaded = load_system_file(path);
    *out = new dsp_model{std::move(loaded.system), std::move(loaded.z0),
                         std::move(loaded.input), 0.01};
    return DSP_OK;
  });
}

dsp_status dsp_model_save(const dsp_model* model, const char* path) {
  if (!model || !path) return invalid_argument("dsp_model_save: bad argument");
  return guarded([&] {
    write_system_file(path, model->system, model->z0, model->input);
    return DSP_OK;
  });
}

void dsp_model_free(dsp_model* model) { delete model; }

dsp_status dsp_model_dims(const dsp_model* model, int* n1, int* n2, int* n3,
                          int* m) {
  if (!model) return invalid_argument("dsp_model_dims: null model");
  const auto& d = model->system.dims();
  if (n1) *n1 = d.n1;
  if (n2) *n2 = d.n2;
  if (n3) *n3 = d.n3;
  if (m) *m = d.m;
  return DSP_OK;
}

dsp_status dsp_model_validate(const dsp_model* model, double* skew_defect,
                              double* sym_defect, double* min_eig_r,
                              int* passed) {
  if (!model) return invalid_argument("dsp_model_validate: null model");
  return guarded([&] {
    const ValidationReport rep = model->system.validate();
    if (skew_defect) *skew_defect = rep.skew_defect;
    if (sym_defect) *sym_defect = rep.sym_defect;
    if (min_eig_r) *min_eig_r = rep.min_eig_r;
    if (passed) *passed = rep.passed ? 1 : 0;
    return DSP_OK;
  });
}

dsp_status dsp_model_initial_state(const dsp_model* model, double* buf,
                                   int len) {
  if (!model || !buf)
    return invalid_argument("dsp_model_initial_state: bad argument");
  if (len != model->z0.z.size())
    return invalid_argument("dsp_model_initial_state: wrong buffer length");
  std::memcpy(buf, model->z0.z.data(), sizeof(double) * len);
  return DSP_OK;
}

void dsp_run_options_init(dsp_run_options* opts) {
  if (!opts) return;
  opts->t0 = 0.0;
  opts->t_end = 1.0;
  opts->tau = 0.0;
  opts->scheme = 0;
  opts->abs_tol = 1e-12;
  opts->rel_tol = 1e-10;
  opts->max_iters = 25;
}

dsp_status dsp_integrate(const dsp_model* model, const dsp_run_options* opts,
                         dsp_trajectory** out) {
  if (!model || !opts || !out)
    return invalid_argument("dsp_integrate: bad argument");
  *out = nullptr;
  return guarded([&] {
    TimeGrid grid{opts->t0, opts->t_end,
                  opts->tau > 0.0 ? opts->tau : model->default_tau};
    SolverOptions solver;
    solver.abs_tol = opts->abs_tol;
    solver.rel_tol = opts->rel_tol;
    solver.max_iters = opts->max_iters;
    const Scheme scheme =
        opts->scheme == 0 ? Scheme::Midpoint : Scheme::DiscreteGradient;
    const StatePartition z0 = consistent_initialization(
        model->system, model->z0, model->input(grid.t0), solver);
    Trajectory traj =
        integrate(model->system, z0, model->input, grid, scheme, solver);
    *out = new dsp_trajectory{std::move(traj), model->input};
    return DSP_OK;
  });
}

void dsp_trajectory_free(dsp_trajectory* traj) { delete traj; }

int dsp_trajectory_steps(const dsp_trajectory* traj) {
  return traj ? traj->traj.steps() : -1;
}

double dsp_trajectory_time(const dsp_trajectory* traj, int level) {
  if (!traj || level < 0 ||
      level >= static_cast<int>(traj->traj.states.size()))
    return 0.0;
  return traj->traj.grid.time(level);
}

double dsp_trajectory_energy(const dsp_trajectory* traj, int level) {
  if (!traj || level < 0 ||
      level >= static_cast<int>(traj->traj.energies.size()))
    return 0.0;
  return traj->traj.energies[static_cast<size_t>(level)];
}

dsp_status dsp_trajectory_state(const dsp_trajectory* traj, int level,
                                double* buf, int len) {
  if (!traj || !buf) return invalid_argument("dsp_trajectory_state: bad argument");
  if (level < 0 || level >= static_cast<int>(traj->traj.states.size()))
    return invalid_argument("dsp_trajectory_state: level out of range");
  const VectorXd& z = traj->traj.states[static_cast<size_t>(level)];
  if (len != z.size())
    return invalid_argument("dsp_trajectory_state: wrong buffer length");
  std::memcpy(buf, z.data(), sizeof(double) * len);
  return DSP_OK;
}

dsp_status dsp_trajectory_dissipation(const dsp_model* model,
                                      const dsp_trajectory* traj,
                                      double* max_violation,
                                      double* balance_max_residual,
                                      int* monotone_when_unforced) {
  if (!model || !traj)
    return invalid_argument("dsp_trajectory_dissipation: bad argument");
  return guarded([&] {
    const DissipationReport rep =
        dissipation_report(model->system, traj->traj, traj->input);
    if (max_violation) *max_violation = rep.max_violation;
    if (balance_max_residual) *balance_max_residual = rep.balance_max_residual;
    if (monotone_when_unforced)
      *monotone_when_unforced = rep.monotone_when_unforced ? 1 : 0;
    return DSP_OK;
  });
}

dsp_status dsp_trajectory_write_csv(const dsp_trajectory* traj,
                                    const char* directory) {
  if (!traj || !directory)
    return invalid_argument("dsp_trajectory_write_csv: bad argument");
  return guarded([&] {
    std::filesystem::create_directories(directory);
    const std::string dir = std::string(directory) + "/";
    write_trajectory_csv(dir + "trajectory.csv", traj->traj);
    write_output_csv(dir + "output.csv", traj->traj);
    write_energy_csv(dir + "energy.csv", traj->traj);
    return DSP_OK;
  });
}

void dsp_overrides_init(dsp_overrides* ov) {
  if (!ov) return;
  ov->out_dir = nullptr;
  ov->scheme = nullptr;
  ov->check = nullptr;
  ov->tau = 0.0;
  ov->t_end = 0.0;
  ov->has_t_end = 0;
  ov->seed = 0;
  ov->has_seed = 0;
}

dsp_status dsp_run_config_file(const char* path, const dsp_overrides* ov,
                               int* exit_code, char* message, size_t msg_cap) {
  if (!path || !exit_code)
    return invalid_argument("dsp_run_config_file: bad argument");
  *exit_code = 1;
  RunSpec spec;
  try {
    spec = parse_config(read_text_file(path));
    if (ov) {
      if (ov->out_dir) spec.outputs.dir = ov->out_dir;
      if (ov->scheme) spec.scheme = scheme_from_name(ov->scheme);
      if (ov->check) spec.check = check_from_name(ov->check);
      if (ov->tau > 0.0) spec.grid.tau = ov->tau;
      if (ov->has_t_end) spec.grid.t_end = ov->t_end;
      if (ov->has_seed) spec.seed = ov->seed;
    }
  } catch (const Error& e) {
    const std::string msg =
        std::string(error_code_name(e.code())) + ": " + e.what();
    copy_message(message, msg_cap, msg);
    set_error(status_of(e.code()), msg);
    return DSP_OK;  // outcome delivered through exit_code
  }
  const RunOutcome outcome = run(spec);
  *exit_code = outcome.exit_code;
  copy_message(message, msg_cap, outcome.message);
  if (outcome.exit_code != 0) g_last_error = outcome.message;
  return DSP_OK;
}

dsp_status dsp_validate_file(const char* path, int* exit_code, char* message,
                             size_t msg_cap) {
  if (!path || !exit_code)
    return invalid_argument("dsp_validate_file: bad argument");
  const RunOutcome outcome = validate_system_file(path);
  *exit_code = outcome.exit_code;
  copy_message(message, msg_cap, outcome.message);
  if (outcome.exit_code != 0) g_last_error = outcome.message;
  return DSP_OK;
}

}  // extern "C"
