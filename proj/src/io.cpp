#include "leech/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace leech::io {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::Parse, what);
}

// --- canonical writer -------------------------------------------------------

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_array()) return false;
    for (const auto& entry : row) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        return false;
      }
    }
  }
  return true;
}

void emit(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out << ",\n";
      first = false;
      out << inner << Json(key).dump() << ": ";
      emit(out, value, indent + 2);
    }
    out << "\n" << pad << "}";
  } else if (is_matrix(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out << ",\n";
      out << inner << j[i].dump();
    }
    out << "\n" << pad << "]";
  } else {
    out << j.dump();
  }
}

std::string canonical(const Json& j) {
  std::ostringstream out;
  emit(out, j, 0);
  out << "\n";
  return out.str();
}

// --- matrices ---------------------------------------------------------------

Json encode(const CMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) {
      row.push_back(Json::array({M(i, k).real(), M(i, k).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Decodes a matrix. A matrix with no rows gets `empty_cols` columns.
CMatrix decode(const Json& j, const std::string& name, Eigen::Index empty_cols = 0) {
  if (!j.is_array()) parse_fail(name + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return CMatrix(0, empty_cols);
  if (!j[0].is_array()) parse_fail(name + " row 0 is not an array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      parse_fail(name + " is ragged at row " + std::to_string(i));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        parse_fail(name + " entry (" + std::to_string(i) + ", " +
                   std::to_string(k) + ") is not a [re, im] pair");
      }
      M(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return M;
}

const Json& field(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    parse_fail(context + " is missing \"" + key + "\"");
  }
  return j.at(key);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

void check_schema(const Json& j, std::string& version) {
  const auto& v = field(j, "schema_version", "file");
  if (!v.is_string()) parse_fail("schema_version must be a string");
  version = v.get<std::string>();
  if (version != kSchemaVersion) {
    parse_fail("unsupported schema_version \"" + version + "\"");
  }
}

Json encode(const Realization& R) {
  Json j = Json::object();
  j["A"] = encode(R.A);
  j["B"] = encode(R.B);
  j["C"] = encode(R.C);
  j["D"] = encode(R.D);
  return j;
}

Realization decode_realization(const Json& j, const std::string& name) {
  Realization R;
  R.D = decode(field(j, "D", name), name + ".D");
  R.A = decode(field(j, "A", name), name + ".A");
  R.B = decode(field(j, "B", name), name + ".B", R.D.cols());
  R.C = decode(field(j, "C", name), name + ".C", R.A.rows());
  try {
    R.validate();
  } catch (const Error& e) {
    parse_fail(name + ": " + e.what());
  }
  return R;
}

double number_or_nan(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (!j.at(key).is_number()) parse_fail(std::string(key) + " is not a number");
  return j.at(key).get<double>();
}

Json encode(const Diagnostics& d) {
  Json j = Json::object();
  j["leech_residual"] = d.leech_residual;
  j["psi_residual"] = d.psi_residual;
  j["contraction_margin"] = d.contraction_margin;
  j["solvability_margin"] = d.solvability_margin;
  j["riccati_residual"] = d.riccati_residual;
  j["partial_isometry_residual"] = d.partial_isometry_residual;
  j["symbol_min_eig"] = d.symbol_min_eig;
  j["minimality"] = Json{{"observable", d.minimality.observable},
                         {"controllable", d.minimality.controllable},
                         {"obs_rank", d.minimality.obs_rank},
                         {"ctrl_rank", d.minimality.ctrl_rank}};
  j["warnings"] = d.warnings;
  return j;
}

Diagnostics decode_diagnostics(const Json& j) {
  Diagnostics d;
  if (!j.is_object()) parse_fail("diagnostics must be an object");
  d.leech_residual = number_or_nan(j, "leech_residual");
  d.psi_residual = number_or_nan(j, "psi_residual");
  d.contraction_margin = number_or_nan(j, "contraction_margin");
  d.solvability_margin = number_or_nan(j, "solvability_margin");
  d.riccati_residual = number_or_nan(j, "riccati_residual");
  d.partial_isometry_residual = number_or_nan(j, "partial_isometry_residual");
  d.symbol_min_eig = number_or_nan(j, "symbol_min_eig");
  if (j.contains("minimality")) {
    const auto& mr = j.at("minimality");
    try {
      d.minimality.observable = mr.at("observable").get<bool>();
      d.minimality.controllable = mr.at("controllable").get<bool>();
      d.minimality.obs_rank = mr.at("obs_rank").get<Eigen::Index>();
      d.minimality.ctrl_rank = mr.at("ctrl_rank").get<Eigen::Index>();
    } catch (const nlohmann::json::exception& e) {
      parse_fail(std::string("bad minimality block: ") + e.what());
    }
  }
  if (j.contains("warnings")) {
    try {
      d.warnings = j.at("warnings").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      parse_fail(std::string("bad warnings list: ") + e.what());
    }
  }
  return d;
}

}  // namespace

std::string_view to_string(SolutionStatus status) {
  switch (status) {
    case SolutionStatus::Ok: return "ok";
    case SolutionStatus::NotSolvable: return "not_solvable";
    case SolutionStatus::SemidefiniteUnsupported: return "semidefinite_unsupported";
  }
  return "unknown";
}

ProblemFile parse_problem(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) parse_fail("problem file must be a JSON object");
  ProblemFile problem;
  check_schema(j, problem.schema_version);

  LeechData& d = problem.data;
  d.D1 = decode(field(j, "D1", "problem"), "D1");
  d.D2 = decode(field(j, "D2", "problem"), "D2");
  d.A = decode(field(j, "A", "problem"), "A");
  d.B1 = decode(field(j, "B1", "problem"), "B1", d.D1.cols());
  d.B2 = decode(field(j, "B2", "problem"), "B2", d.D2.cols());
  d.C = decode(field(j, "C", "problem"), "C", d.A.rows());
  try {
    const auto n = d.A.rows();
    require_shape(d.A, n, n, "A");
    require_shape(d.C, d.D1.rows(), n, "C");
    require_shape(d.B1, n, d.D1.cols(), "B1");
    require_shape(d.B2, n, d.D2.cols(), "B2");
    require_shape(d.D2, d.D1.rows(), d.D2.cols(), "D2");
  } catch (const Error& e) {
    parse_fail(e.what());
  }

  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (!o.is_object()) parse_fail("options must be an object");
    ProblemOptions opts;
    try {
      if (o.contains("tol")) opts.tol = o.at("tol").get<double>();
      if (o.contains("grid")) opts.grid = o.at("grid").get<int>();
      if (o.contains("max_iter")) opts.max_iter = o.at("max_iter").get<int>();
      if (o.contains("allow_nonminimal")) {
        opts.allow_nonminimal = o.at("allow_nonminimal").get<bool>();
      }
    } catch (const nlohmann::json::exception& e) {
      parse_fail(std::string("bad options block: ") + e.what());
    }
    problem.options = opts;
  }
  return problem;
}

std::string write_problem(const ProblemFile& problem) {
  Json j = Json::object();
  j["schema_version"] = problem.schema_version;
  const LeechData& d = problem.data;
  j["A"] = encode(d.A);
  j["B1"] = encode(d.B1);
  j["B2"] = encode(d.B2);
  j["C"] = encode(d.C);
  j["D1"] = encode(d.D1);
  j["D2"] = encode(d.D2);
  if (problem.options) {
    Json o = Json::object();
    const auto& opts = *problem.options;
    if (opts.tol) o["tol"] = *opts.tol;
    if (opts.grid) o["grid"] = *opts.grid;
    if (opts.max_iter) o["max_iter"] = *opts.max_iter;
    if (opts.allow_nonminimal) o["allow_nonminimal"] = *opts.allow_nonminimal;
    j["options"] = std::move(o);
  }
  return canonical(j);
}

SolutionFile parse_solution(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) parse_fail("solution file must be a JSON object");
  SolutionFile s;
  check_schema(j, s.schema_version);
  const auto& status = field(j, "status", "solution");
  if (status == "ok") {
    s.status = SolutionStatus::Ok;
  } else if (status == "not_solvable") {
    s.status = SolutionStatus::NotSolvable;
  } else if (status == "semidefinite_unsupported") {
    s.status = SolutionStatus::SemidefiniteUnsupported;
  } else {
    parse_fail("unknown status " + status.dump());
  }
  if (j.contains("message")) s.message = j.at("message").get<std::string>();
  if (j.contains("branch")) {
    const auto& b = j.at("branch");
    if (b == "strictly_positive") {
      s.branch = Branch::StrictlyPositive;
    } else if (b == "r_identically_zero") {
      s.branch = Branch::RIdenticallyZero;
    } else {
      parse_fail("unknown branch " + b.dump());
    }
  }
  if (j.contains("X")) s.X = decode_realization(j.at("X"), "X");
  if (j.contains("Psi")) s.Psi = decode_realization(j.at("Psi"), "Psi");
  if (j.contains("F")) s.F = decode_realization(j.at("F"), "F");
  if (j.contains("U")) s.U = decode(j.at("U"), "U");
  if (j.contains("diagnostics")) s.diagnostics = decode_diagnostics(j.at("diagnostics"));
  return s;
}

std::string write_solution(const SolutionFile& s) {
  Json j = Json::object();
  j["schema_version"] = s.schema_version;
  j["status"] = std::string(to_string(s.status));
  if (!s.message.empty()) j["message"] = s.message;
  if (s.branch) j["branch"] = std::string(to_string(*s.branch));
  if (s.X) j["X"] = encode(*s.X);
  if (s.Psi) j["Psi"] = encode(*s.Psi);
  if (s.F) j["F"] = encode(*s.F);
  if (s.U) j["U"] = encode(*s.U);
  j["diagnostics"] = encode(s.diagnostics);
  return canonical(j);
}

SymbolR parse_symbol(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) parse_fail("symbol file must be a JSON object");
  std::string version;
  check_schema(j, version);
  SymbolR sym;
  sym.R0 = decode(field(j, "R0", "symbol"), "R0");
  sym.A = decode(field(j, "A", "symbol"), "A");
  sym.C = decode(field(j, "C", "symbol"), "C", sym.A.rows());
  sym.Gamma = decode(field(j, "Gamma", "symbol"), "Gamma", sym.R0.rows());
  try {
    const auto n = sym.A.rows();
    const auto m = sym.R0.rows();
    require_shape(sym.A, n, n, "A");
    require_shape(sym.C, m, n, "C");
    require_shape(sym.Gamma, n, m, "Gamma");
    require_shape(sym.R0, m, m, "R0");
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return sym;
}

std::string write_symbol(const SymbolR& sym) {
  Json j = Json::object();
  j["schema_version"] = std::string(kSchemaVersion);
  j["A"] = encode(sym.A);
  j["C"] = encode(sym.C);
  j["Gamma"] = encode(sym.Gamma);
  j["R0"] = encode(sym.R0);
  return canonical(j);
}

std::string write_factor(const FactorFile& f) {
  Json j = Json::object();
  j["schema_version"] = f.schema_version;
  j["Q"] = encode(f.Q);
  j["Phi"] = encode(f.phi);
  j["Phi_inv"] = encode(f.phi_inv);
  j["diagnostics"] = Json{{"riccati_residual", f.riccati_residual},
                          {"closed_loop_spectral_radius",
                           f.closed_loop_spectral_radius}};
  return canonical(j);
}

ProblemFile example_problem() {
  const double s = 1.0 / std::sqrt(2.0);
  ProblemFile problem;
  LeechData& d = problem.data;
  d.A = CMatrix::Zero(1, 1);
  d.C = CMatrix::Ones(1, 1);
  d.B1 = CMatrix::Zero(1, 2);
  d.D1 = CMatrix::Constant(1, 2, Complex(s, 0.0));
  d.B2 = CMatrix::Constant(1, 1, Complex(0.5, 0.0));
  d.D2 = CMatrix::Zero(1, 1);
  return problem;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Parse, "write failed for " + path.string());
}

}  // namespace leech::io
