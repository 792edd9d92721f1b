#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dissipact {

namespace {

constexpr const char* kHeader = "dissipact-system";
constexpr int kVersion = 1;

void append_row(std::string& out, const double* data, int n) {
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += format_double(data[i]);
  }
  out += '\n';
}

void append_matrix(std::string& out, const std::string& name,
                   const MatrixXd& m) {
  out += name + ' ' + std::to_string(m.rows()) + ' ' +
         std::to_string(m.cols()) + '\n';
  VectorXd row(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    row = m.row(i);
    append_row(out, row.data(), static_cast<int>(m.cols()));
  }
}

void append_vector(std::string& out, const std::string& name,
                   const VectorXd& v) {
  out += name + ' ' + std::to_string(v.size()) + '\n';
  if (v.size() > 0) append_row(out, v.data(), static_cast<int>(v.size()));
}

void append_energy(std::string& out, const EnergyModel& energy) {
  switch (energy.kind()) {
    case EnergyKind::Quadratic: {
      const auto& q = static_cast<const QuadraticEnergy&>(energy);
      out += "energy quadratic\n";
      append_matrix(out, "M1", q.m1());
      append_matrix(out, "M2", q.m2());
      return;
    }
    case EnergyKind::GeneralQuadratic: {
      const auto& q = static_cast<const GeneralQuadraticEnergy&>(energy);
      out += "energy general-quadratic " + std::to_string(energy.n1()) + ' ' +
             std::to_string(energy.n2()) + '\n';
      append_matrix(out, "Q", q.q());
      append_vector(out, "c", q.c());
      return;
    }
    case EnergyKind::AugmentedQuadratic: {
      const auto& q = static_cast<const AugmentedQuadraticEnergy&>(energy);
      out += "energy augmented-quadratic\n";
      append_matrix(out, "K", q.stiffness());
      append_matrix(out, "M", q.mass());
      append_matrix(out, "Bc", q.constraint());
      append_vector(out, "g", q.offset());
      return;
    }
    case EnergyKind::DoubleWellLattice: {
      const auto& q = static_cast<const DoubleWellLatticeEnergy&>(energy);
      out += "energy double-well " + std::to_string(energy.n1()) + ' ' +
             std::to_string(energy.n2()) + ' ' + format_double(q.eps()) + '\n';
      append_matrix(out, "K", q.stiffness());
      append_vector(out, "w", q.weights());
      return;
    }
    case EnergyKind::Composed:
      fail(ErrorCode::IllegalKind, "composed energies are not serializable");
  }
  fail(ErrorCode::IllegalKind, "unknown energy kind");
}

void append_input(std::string& out, const InputSignal& input) {
  const int m = input.dim();
  switch (input.kind()) {
    case SignalKind::Zero:
      out += "input zero " + std::to_string(m) + '\n';
      return;
    case SignalKind::Constant:
      out += "input constant " + std::to_string(m) + '\n';
      append_row(out, input.constant_value().data(), m);
      return;
    case SignalKind::Sinusoid:
      out += "input sinusoid " + std::to_string(m) + '\n';
      append_row(out, input.amplitude().data(), m);
      append_row(out, input.omega().data(), m);
      append_row(out, input.phase().data(), m);
      return;
    case SignalKind::PiecewiseLinear:
    case SignalKind::Custom:
      fail(ErrorCode::IllegalKind,
           "only zero/constant/sinusoid inputs are serializable");
  }
  fail(ErrorCode::IllegalKind, "unknown input kind");
}

/// Whitespace tokenizer that remembers the line of every token, so parse
/// errors can point at the offending location.
class Lexer {
 public:
  explicit Lexer(const std::string& text) {
    int line = 1;
    std::string tok;
    auto flush = [&] {
      if (!tok.empty()) {
        tokens_.push_back(tok);
        lines_.push_back(line);
        tok.clear();
      }
    };
    for (char ch : text) {
      if (ch == '\n') {
        flush();
        ++line;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        flush();
      } else {
        tok += ch;
      }
    }
    flush();
  }

  bool done() const { return pos_ >= tokens_.size(); }

  int line() const {
    return pos_ < lines_.size() ? lines_[pos_]
                                : (lines_.empty() ? 1 : lines_.back());
  }

  std::string next(const char* what) {
    if (done())
      fail(ErrorCode::ParseError,
           std::string("line ") + std::to_string(line()) +
               ": unexpected end of file, expected " + what);
    return tokens_[pos_++];
  }

  void expect(const std::string& word) {
    const int at = line();
    const std::string got = next(word.c_str());
    if (got != word)
      fail(ErrorCode::ParseError, "line " + std::to_string(at) +
                                      ": expected '" + word + "', got '" +
                                      got + "'");
  }

  long long integer(const char* what) {
    const int at = line();
    const std::string tok = next(what);
    try {
      size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(at) + ": '" + tok +
                                    "' is not an integer (" + what + ")");
  }

  double real(const char* what) {
    const int at = line();
    const std::string tok = next(what);
    try {
      size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(at) + ": '" + tok +
                                    "' is not a number (" + what + ")");
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<int> lines_;
  size_t pos_ = 0;
};

MatrixXd read_matrix(Lexer& lx, const std::string& name) {
  lx.expect(name);
  const int rows = static_cast<int>(lx.integer("row count"));
  const int cols = static_cast<int>(lx.integer("column count"));
  if (rows < 0 || cols < 0)
    fail(ErrorCode::ParseError,
         "line " + std::to_string(lx.line()) + ": negative matrix size");
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = lx.real(name.c_str());
  return m;
}

VectorXd read_vector(Lexer& lx, const std::string& name) {
  lx.expect(name);
  const int n = static_cast<int>(lx.integer("vector length"));
  if (n < 0)
    fail(ErrorCode::ParseError,
         "line " + std::to_string(lx.line()) + ": negative vector size");
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = lx.real(name.c_str());
  return v;
}

EnergyPtr read_energy(Lexer& lx) {
  lx.expect("energy");
  const int at = lx.line();
  const std::string kind = lx.next("energy kind");
  if (kind == "quadratic") {
    MatrixXd m1 = read_matrix(lx, "M1");
    MatrixXd m2 = read_matrix(lx, "M2");
    return std::make_shared<QuadraticEnergy>(std::move(m1), std::move(m2));
  }
  if (kind == "general-quadratic") {
    const int n1 = static_cast<int>(lx.integer("n1"));
    const int n2 = static_cast<int>(lx.integer("n2"));
    MatrixXd q = read_matrix(lx, "Q");
    VectorXd c = read_vector(lx, "c");
    return std::make_shared<GeneralQuadraticEnergy>(n1, n2, std::move(q),
                                                    std::move(c));
  }
  if (kind == "augmented-quadratic") {
    MatrixXd k = read_matrix(lx, "K");
    MatrixXd m = read_matrix(lx, "M");
    MatrixXd bc = read_matrix(lx, "Bc");
    VectorXd g = read_vector(lx, "g");
    return std::make_shared<AugmentedQuadraticEnergy>(
        std::move(k), std::move(m), std::move(bc), std::move(g));
  }
  if (kind == "double-well") {
    const int n1 = static_cast<int>(lx.integer("n1"));
    const int n2 = static_cast<int>(lx.integer("n2"));
    const double eps = lx.real("eps");
    MatrixXd k = read_matrix(lx, "K");
    VectorXd w = read_vector(lx, "w");
    return std::make_shared<DoubleWellLatticeEnergy>(std::move(k), eps,
                                                     std::move(w), n1, n2);
  }
  fail(ErrorCode::ParseError, "line " + std::to_string(at) +
                                  ": unknown energy kind '" + kind + "'");
}

InputSignal read_input(Lexer& lx) {
  lx.expect("input");
  const int at = lx.line();
  const std::string kind = lx.next("input kind");
  const int m = static_cast<int>(lx.integer("input dimension"));
  if (m < 0)
    fail(ErrorCode::ParseError,
         "line " + std::to_string(at) + ": negative input dimension");
  auto row = [&](const char* what) {
    VectorXd v(m);
    for (int i = 0; i < m; ++i) v[i] = lx.real(what);
    return v;
  };
  if (kind == "zero") return InputSignal::zero(m);
  if (kind == "constant") return InputSignal::constant(row("constant value"));
  if (kind == "sinusoid") {
    VectorXd amp = row("amplitude");
    VectorXd omega = row("omega");
    VectorXd phase = row("phase");
    return InputSignal::sinusoid(std::move(amp), std::move(omega),
                                 std::move(phase));
  }
  fail(ErrorCode::ParseError, "line " + std::to_string(at) +
                                  ": unknown input kind '" + kind + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_system(const StructuredSystem& sys,
                             const StatePartition& z0,
                             const InputSignal& input) {
  const auto& d = sys.dims();
  if (input.dim() != d.m)
    fail(ErrorCode::DimensionMismatch, "input dim does not match system");
  std::string out;
  out += std::string(kHeader) + ' ' + std::to_string(kVersion) + '\n';
  out += "dims " + std::to_string(d.n1) + ' ' + std::to_string(d.n2) + ' ' +
         std::to_string(d.n3) + ' ' + std::to_string(d.m) + '\n';
  append_matrix(out, "J", sys.j());
  append_matrix(out, "R", sys.r());
  append_matrix(out, "B", sys.b());
  append_energy(out, sys.energy());
  append_vector(out, "z0", z0.z);
  append_input(out, input);
  out += "end\n";
  return out;
}

LoadedSystem parse_system(const std::string& text) {
  Lexer lx(text);
  lx.expect(kHeader);
  const long long version = lx.integer("format version");
  if (version != kVersion)
    fail(ErrorCode::ParseError,
         "unsupported system-file version " + std::to_string(version));
  lx.expect("dims");
  SystemDims dims;
  dims.n1 = static_cast<int>(lx.integer("n1"));
  dims.n2 = static_cast<int>(lx.integer("n2"));
  dims.n3 = static_cast<int>(lx.integer("n3"));
  dims.m = static_cast<int>(lx.integer("m"));
  dims.check();

  MatrixXd j = read_matrix(lx, "J");
  MatrixXd r = read_matrix(lx, "R");
  MatrixXd b = read_matrix(lx, "B");
  EnergyPtr energy = read_energy(lx);
  VectorXd z0 = read_vector(lx, "z0");
  InputSignal input = read_input(lx);
  lx.expect("end");
  if (!lx.done())
    fail(ErrorCode::ParseError, "line " + std::to_string(lx.line()) +
                                    ": trailing content after 'end'");

  if (z0.size() != dims.n())
    fail(ErrorCode::DimensionMismatch,
         "z0 has length " + std::to_string(z0.size()) + ", dims give " +
             std::to_string(dims.n()));
  if (input.dim() != dims.m)
    fail(ErrorCode::DimensionMismatch, "input dim does not match dims");

  auto sys = StructuredSystem::assemble(dims, std::move(j), std::move(r),
                                        std::move(b), std::move(energy));
  StatePartition state(std::move(z0), dims);
  return {std::move(sys), std::move(state), std::move(input)};
}

void write_system_file(const std::string& path, const StructuredSystem& sys,
                       const StatePartition& z0, const InputSignal& input) {
  write_text_file(path, serialize_system(sys, z0, input));
}

LoadedSystem load_system_file(const std::string& path) {
  return parse_system(read_text_file(path));
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  const auto& d = traj.dims;
  std::string out = "t";
  for (int i = 0; i < d.n1; ++i) out += ",z1[" + std::to_string(i) + ']';
  for (int i = 0; i < d.n2; ++i) out += ",z2[" + std::to_string(i) + ']';
  for (int i = 0; i < d.n3; ++i) out += ",z3[" + std::to_string(i) + ']';
  out += ",H\n";
  for (size_t n = 0; n < traj.states.size(); ++n) {
    out += format_double(traj.grid.time(static_cast<int>(n)));
    const VectorXd& z = traj.states[n];
    for (int i = 0; i < z.size(); ++i) out += ',' + format_double(z[i]);
    out += ',' + format_double(traj.energies[n]) + '\n';
  }
  write_text_file(path, out);
}

void write_output_csv(const std::string& path, const Trajectory& traj) {
  const int m = traj.dims.m;
  std::string out = "t_mid";
  for (int i = 0; i < m; ++i) out += ",y[" + std::to_string(i) + ']';
  out += '\n';
  for (int n = 0; n < traj.steps(); ++n) {
    out += format_double(traj.grid.midpoint_time(n));
    const VectorXd& y = traj.outputs[static_cast<size_t>(n)];
    for (int i = 0; i < y.size(); ++i) out += ',' + format_double(y[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_energy_csv(const std::string& path, const Trajectory& traj) {
  std::string out = "t,H\n";
  for (size_t n = 0; n < traj.energies.size(); ++n) {
    out += format_double(traj.grid.time(static_cast<int>(n))) + ',' +
           format_double(traj.energies[n]) + '\n';
  }
  write_text_file(path, out);
}

std::string report_json(const ValidationReport& validation,
                        const DissipationReport* dissipation,
                        const double* gradient_check_error) {
  nlohmann::json doc;
  doc["structure"] = {{"skew_defect", validation.skew_defect},
                      {"sym_defect", validation.sym_defect},
                      {"min_eig_r", validation.min_eig_r},
                      {"dim_consistent", validation.dim_consistent},
                      {"passed", validation.passed}};
  if (dissipation) {
    doc["dissipation"] = {
        {"max_violation", dissipation->max_violation},
        {"monotone_when_unforced", dissipation->monotone_when_unforced},
        {"balance_max_residual", dissipation->balance_max_residual},
        {"unforced", dissipation->unforced},
        {"tolerance", dissipation->tolerance}};
  }
  if (gradient_check_error)
    doc["gradient_check_error"] = *gradient_check_error;
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "error while reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "error while writing '" + path + "'");
}

}  // namespace dissipact
