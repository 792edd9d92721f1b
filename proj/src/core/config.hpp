#pragma once

#include <map>
#include <string>

#include "core/integrator.hpp"

namespace dissipact {

enum class CheckKind { None, Dissipation, Full };

/// Declarative input description; unlike InputSignal it is comparable and
/// serializable, which the config round-trip property needs.
struct InputSpec {
  SignalKind kind = SignalKind::Zero;
  VectorXd value;                    // constant
  VectorXd amplitude, omega, phase;  // sinusoid
  std::vector<double> times;         // piecewise linear
  std::vector<VectorXd> values;

  InputSignal instantiate(int m) const;
  bool operator==(const InputSpec& o) const;
};

struct OutputSpec {
  std::string dir = "out";
  bool trajectory_csv = true;
  bool energy_csv = true;
  bool report_json = true;

  bool operator==(const OutputSpec&) const = default;
};

struct RunSpec {
  // exactly one of model_name / system_path is set
  std::string model_name;
  std::string system_path;
  std::map<std::string, double> params;
  int grid_points = 0;  // 0 keeps the model default

  Scheme scheme = Scheme::Midpoint;
  TimeGrid grid{0.0, 1.0, 0.01};
  InputSpec input;
  SolverOptions solver;
  OutputSpec outputs;
  CheckKind check = CheckKind::None;
  unsigned long seed = 0;

  bool operator==(const RunSpec& o) const;
};

/// Parses the sectioned key-value config format; fills documented defaults,
/// rejects unknown sections/keys and ill-typed values.
RunSpec parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(s)) == s.
std::string serialize_config(const RunSpec& spec);

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
std::string check_name(CheckKind c);
CheckKind check_from_name(const std::string& name);

}  // namespace dissipact
