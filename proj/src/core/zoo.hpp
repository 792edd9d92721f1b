#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/integrator.hpp"
#include "core/system.hpp"

namespace dissipact {

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;
  int grid = 0;  // spatial resolution; 0 picks the model default
};

struct ZooModel {
  StructuredSystem system;
  StatePartition z0;
  InputSignal default_input;
  double default_tau = 0.01;
  std::string notes;
  // closed-form solution z(t) when one exists for the default parameters
  std::function<VectorXd(double)> oracle;
};

/// Builds one of the named example systems with consistent initial data.
ZooModel build_model(const ModelSpec& spec);

const std::vector<std::string>& zoo_names();
std::string zoo_describe(const std::string& name);

}  // namespace dissipact
