#include "core/config.hpp"

#include <sstream>

#include "core/io.hpp"

namespace dissipact {

namespace {

bool vec_eq(const VectorXd& a, const VectorXd& b) {
  return a.size() == b.size() && a == b;
}

std::string join_vector(const VectorXd& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

VectorXd parse_vector(const std::string& text, const std::string& key) {
  std::istringstream ss(text);
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) {
    try {
      size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidValue,
           "key '" + key + "': '" + tok + "' is not a number");
    }
  }
  VectorXd v(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
  return v;
}

double parse_scalar(const std::string& text, const std::string& key) {
  const VectorXd v = parse_vector(text, key);
  if (v.size() != 1)
    fail(ErrorCode::InvalidValue, "key '" + key + "' expects one number");
  return v[0];
}

long long parse_integer(const std::string& text, const std::string& key) {
  try {
    size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidValue,
       "key '" + key + "': '" + text + "' is not an integer");
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(ErrorCode::InvalidValue,
       "key '" + key + "': expected true or false, got '" + text + "'");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string section, key, value;
  int line;
};

std::vector<Entry> split_entries(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        fail(ErrorCode::ParseError,
             "line " + std::to_string(line) + ", column " +
                 std::to_string(raw.size()) + ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty())
        fail(ErrorCode::ParseError,
             "line " + std::to_string(line) + ", column 2: empty section name");
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError, "line " + std::to_string(line) +
                                      ", column 1: expected 'key = value'");
    Entry e;
    e.section = section;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (e.key.empty())
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line) + ", column 1: empty key");
    if (e.section.empty())
      fail(ErrorCode::ParseError, "line " + std::to_string(line) +
                                      ", column 1: key before any section");
    // strip optional quotes around string values
    if (e.value.size() >= 2 && e.value.front() == '"' && e.value.back() == '"')
      e.value = e.value.substr(1, e.value.size() - 2);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<VectorXd> parse_vector_list(const std::string& text,
                                        const std::string& key) {
  std::vector<VectorXd> out;
  std::string chunk;
  std::istringstream ss(text);
  while (std::getline(ss, chunk, ';')) out.push_back(parse_vector(chunk, key));
  return out;
}

std::string signal_kind_name(SignalKind k) {
  switch (k) {
    case SignalKind::Zero: return "zero";
    case SignalKind::Constant: return "constant";
    case SignalKind::Sinusoid: return "sinusoid";
    case SignalKind::PiecewiseLinear: return "piecewise";
    case SignalKind::Custom: break;
  }
  fail(ErrorCode::IllegalKind, "custom inputs cannot appear in a config");
}

}  // namespace

InputSignal InputSpec::instantiate(int m) const {
  auto check = [&](const VectorXd& v, const char* what) {
    if (v.size() != m)
      fail(ErrorCode::DimensionMismatch,
           std::string("input ") + what + " has length " +
               std::to_string(v.size()) + ", system expects " +
               std::to_string(m));
  };
  switch (kind) {
    case SignalKind::Zero:
      return InputSignal::zero(m);
    case SignalKind::Constant:
      check(value, "value");
      return InputSignal::constant(value);
    case SignalKind::Sinusoid:
      check(amplitude, "amplitude");
      check(omega, "omega");
      check(phase, "phase");
      return InputSignal::sinusoid(amplitude, omega, phase);
    case SignalKind::PiecewiseLinear:
      for (const auto& v : values) check(v, "sample");
      return InputSignal::piecewise_linear(times, values);
    case SignalKind::Custom:
      break;
  }
  fail(ErrorCode::IllegalKind, "custom inputs cannot appear in a config");
}

bool InputSpec::operator==(const InputSpec& o) const {
  if (kind != o.kind) return false;
  if (!vec_eq(value, o.value) || !vec_eq(amplitude, o.amplitude) ||
      !vec_eq(omega, o.omega) || !vec_eq(phase, o.phase))
    return false;
  if (times != o.times || values.size() != o.values.size()) return false;
  for (size_t i = 0; i < values.size(); ++i)
    if (!vec_eq(values[i], o.values[i])) return false;
  return true;
}

bool RunSpec::operator==(const RunSpec& o) const {
  return model_name == o.model_name && system_path == o.system_path &&
         params == o.params && grid_points == o.grid_points &&
         scheme == o.scheme && grid == o.grid && input == o.input &&
         solver == o.solver && outputs == o.outputs && check == o.check &&
         seed == o.seed;
}

std::string scheme_name(Scheme s) {
  return s == Scheme::Midpoint ? "midpoint" : "discrete-gradient";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "midpoint") return Scheme::Midpoint;
  if (name == "discrete-gradient") return Scheme::DiscreteGradient;
  fail(ErrorCode::InvalidValue, "unknown scheme '" + name + "'");
}

std::string check_name(CheckKind c) {
  switch (c) {
    case CheckKind::None: return "none";
    case CheckKind::Dissipation: return "dissipation";
    case CheckKind::Full: return "full";
  }
  fail(ErrorCode::IllegalKind, "unknown check kind");
}

CheckKind check_from_name(const std::string& name) {
  if (name == "none") return CheckKind::None;
  if (name == "dissipation") return CheckKind::Dissipation;
  if (name == "full") return CheckKind::Full;
  fail(ErrorCode::InvalidValue, "unknown check '" + name + "'");
}

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  bool input_kind_seen = false;
  for (const Entry& e : split_entries(text)) {
    const std::string where =
        "line " + std::to_string(e.line) + ": [" + e.section + "] " + e.key;
    if (e.section == "model") {
      if (e.key == "name") spec.model_name = e.value;
      else if (e.key == "file") spec.system_path = e.value;
      else if (e.key == "grid")
        spec.grid_points = static_cast<int>(parse_integer(e.value, e.key));
      else if (e.key.rfind("param.", 0) == 0)
        spec.params[e.key.substr(6)] = parse_scalar(e.value, e.key);
      else
        fail(ErrorCode::UnknownKey, where + ": unknown key");
    } else if (e.section == "grid") {
      if (e.key == "t0") spec.grid.t0 = parse_scalar(e.value, e.key);
      else if (e.key == "t_end") spec.grid.t_end = parse_scalar(e.value, e.key);
      else if (e.key == "tau") spec.grid.tau = parse_scalar(e.value, e.key);
      else fail(ErrorCode::UnknownKey, where + ": unknown key");
    } else if (e.section == "solver") {
      if (e.key == "scheme") spec.scheme = scheme_from_name(e.value);
      else if (e.key == "abs_tol")
        spec.solver.abs_tol = parse_scalar(e.value, e.key);
      else if (e.key == "rel_tol")
        spec.solver.rel_tol = parse_scalar(e.value, e.key);
      else if (e.key == "max_iters")
        spec.solver.max_iters = static_cast<int>(parse_integer(e.value, e.key));
      else if (e.key == "damping") {
        if (e.value == "none") spec.solver.damping = Damping::None;
        else if (e.value == "backtracking")
          spec.solver.damping = Damping::Backtracking;
        else
          fail(ErrorCode::InvalidValue, where + ": unknown damping");
      } else if (e.key == "jacobian") {
        if (e.value == "analytic")
          spec.solver.jacobian = JacobianMode::Analytic;
        else if (e.value == "finite-difference")
          spec.solver.jacobian = JacobianMode::FiniteDifference;
        else
          fail(ErrorCode::InvalidValue, where + ": unknown jacobian mode");
      } else
        fail(ErrorCode::UnknownKey, where + ": unknown key");
    } else if (e.section == "input") {
      if (e.key == "kind") {
        input_kind_seen = true;
        if (e.value == "zero") spec.input.kind = SignalKind::Zero;
        else if (e.value == "constant") spec.input.kind = SignalKind::Constant;
        else if (e.value == "sinusoid") spec.input.kind = SignalKind::Sinusoid;
        else if (e.value == "piecewise")
          spec.input.kind = SignalKind::PiecewiseLinear;
        else
          fail(ErrorCode::InvalidValue, where + ": unknown input kind");
      } else if (e.key == "value")
        spec.input.value = parse_vector(e.value, e.key);
      else if (e.key == "amplitude")
        spec.input.amplitude = parse_vector(e.value, e.key);
      else if (e.key == "omega")
        spec.input.omega = parse_vector(e.value, e.key);
      else if (e.key == "phase")
        spec.input.phase = parse_vector(e.value, e.key);
      else if (e.key == "times") {
        const VectorXd t = parse_vector(e.value, e.key);
        spec.input.times.assign(t.data(), t.data() + t.size());
      } else if (e.key == "values")
        spec.input.values = parse_vector_list(e.value, e.key);
      else
        fail(ErrorCode::UnknownKey, where + ": unknown key");
    } else if (e.section == "outputs") {
      if (e.key == "dir") spec.outputs.dir = e.value;
      else if (e.key == "trajectory_csv")
        spec.outputs.trajectory_csv = parse_bool(e.value, e.key);
      else if (e.key == "energy_csv")
        spec.outputs.energy_csv = parse_bool(e.value, e.key);
      else if (e.key == "report_json")
        spec.outputs.report_json = parse_bool(e.value, e.key);
      else if (e.key == "check") spec.check = check_from_name(e.value);
      else if (e.key == "seed") {
        const long long s = parse_integer(e.value, e.key);
        if (s < 0) fail(ErrorCode::InvalidValue, where + ": seed must be >= 0");
        spec.seed = static_cast<unsigned long>(s);
      } else
        fail(ErrorCode::UnknownKey, where + ": unknown key");
    } else {
      fail(ErrorCode::UnknownKey,
           "line " + std::to_string(e.line) + ": unknown section [" +
               e.section + "]");
    }
  }
  (void)input_kind_seen;

  if (spec.model_name.empty() == spec.system_path.empty())
    fail(ErrorCode::InvalidValue,
         "config must set exactly one of [model] name or [model] file");
  if (spec.grid_points < 0)
    fail(ErrorCode::InvalidValue, "[model] grid must be >= 0");
  if (spec.grid.tau <= 0.0)
    fail(ErrorCode::InvalidValue, "[grid] tau must be positive");
  if (spec.grid.t_end <= spec.grid.t0)
    fail(ErrorCode::InvalidValue, "[grid] t_end must exceed t0");
  if (spec.solver.abs_tol <= 0.0 || spec.solver.rel_tol < 0.0)
    fail(ErrorCode::InvalidValue, "[solver] tolerances must be positive");
  if (spec.solver.max_iters < 1)
    fail(ErrorCode::InvalidValue, "[solver] max_iters must be at least 1");
  return spec;
}

std::string serialize_config(const RunSpec& spec) {
  std::string out = "[model]\n";
  if (!spec.model_name.empty()) out += "name = " + spec.model_name + '\n';
  if (!spec.system_path.empty()) out += "file = " + spec.system_path + '\n';
  if (spec.grid_points != 0)
    out += "grid = " + std::to_string(spec.grid_points) + '\n';
  for (const auto& [key, val] : spec.params)
    out += "param." + key + " = " + format_double(val) + '\n';

  out += "\n[grid]\n";
  out += "t0 = " + format_double(spec.grid.t0) + '\n';
  out += "t_end = " + format_double(spec.grid.t_end) + '\n';
  out += "tau = " + format_double(spec.grid.tau) + '\n';

  out += "\n[solver]\n";
  out += "scheme = " + scheme_name(spec.scheme) + '\n';
  out += "abs_tol = " + format_double(spec.solver.abs_tol) + '\n';
  out += "rel_tol = " + format_double(spec.solver.rel_tol) + '\n';
  out += "max_iters = " + std::to_string(spec.solver.max_iters) + '\n';
  out += std::string("damping = ") +
         (spec.solver.damping == Damping::None ? "none" : "backtracking") +
         '\n';
  out += std::string("jacobian = ") +
         (spec.solver.jacobian == JacobianMode::Analytic ? "analytic"
                                                         : "finite-difference") +
         '\n';

  out += "\n[input]\n";
  out += "kind = " + signal_kind_name(spec.input.kind) + '\n';
  switch (spec.input.kind) {
    case SignalKind::Constant:
      out += "value = " + join_vector(spec.input.value) + '\n';
      break;
    case SignalKind::Sinusoid:
      out += "amplitude = " + join_vector(spec.input.amplitude) + '\n';
      out += "omega = " + join_vector(spec.input.omega) + '\n';
      out += "phase = " + join_vector(spec.input.phase) + '\n';
      break;
    case SignalKind::PiecewiseLinear: {
      std::string ts;
      for (size_t i = 0; i < spec.input.times.size(); ++i) {
        if (i) ts += ' ';
        ts += format_double(spec.input.times[i]);
      }
      out += "times = " + ts + '\n';
      std::string vs;
      for (size_t i = 0; i < spec.input.values.size(); ++i) {
        if (i) vs += "; ";
        vs += join_vector(spec.input.values[i]);
      }
      out += "values = " + vs + '\n';
      break;
    }
    default:
      break;
  }

  out += "\n[outputs]\n";
  out += "dir = " + spec.outputs.dir + '\n';
  out += std::string("trajectory_csv = ") +
         (spec.outputs.trajectory_csv ? "true" : "false") + '\n';
  out += std::string("energy_csv = ") +
         (spec.outputs.energy_csv ? "true" : "false") + '\n';
  out += std::string("report_json = ") +
         (spec.outputs.report_json ? "true" : "false") + '\n';
  out += "check = " + check_name(spec.check) + '\n';
  out += "seed = " + std::to_string(spec.seed) + '\n';
  return out;
}

}  // namespace dissipact
