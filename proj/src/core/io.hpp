#pragma once

#include <string>

#include "core/diagnostics.hpp"
#include "core/integrator.hpp"

namespace dissipact {

struct LoadedSystem {
  StructuredSystem system;
  StatePartition z0;
  InputSignal input;
};

/// Text form of a system: header, dims, dense J/R/B blocks, energy kind with
/// its parameters, initial state, and the input description. All floats are
/// printed with %.17g so serialize/load round-trips bit-exactly.
std::string serialize_system(const StructuredSystem& sys,
                             const StatePartition& z0,
                             const InputSignal& input);

LoadedSystem parse_system(const std::string& text);

void write_system_file(const std::string& path, const StructuredSystem& sys,
                       const StatePartition& z0, const InputSignal& input);
LoadedSystem load_system_file(const std::string& path);

/// Shortest fixed-width float formatting used by every artifact writer.
std::string format_double(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_output_csv(const std::string& path, const Trajectory& traj);
void write_energy_csv(const std::string& path, const Trajectory& traj);

/// JSON document combining the structure report with (optionally) the
/// dissipation report and the worst gradient self-check error.
std::string report_json(const ValidationReport& validation,
                        const DissipationReport* dissipation,
                        const double* gradient_check_error);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dissipact
