#pragma once

// JSON file formats. Complex entries are [re, im] pairs, matrices nest
// rows then columns. All files carry "schema_version": "1".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "leech/solver.hpp"
#include "leech/spectral.hpp"

namespace leech::io {

inline constexpr std::string_view kSchemaVersion = "1";

struct ProblemOptions {
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<int> max_iter;
  std::optional<bool> allow_nonminimal;
};

struct ProblemFile {
  std::string schema_version{kSchemaVersion};
  LeechData data;
  std::optional<ProblemOptions> options;
};

/// Status values written to a solution file.
enum class SolutionStatus { Ok, NotSolvable, SemidefiniteUnsupported };

std::string_view to_string(SolutionStatus status);

struct SolutionFile {
  std::string schema_version{kSchemaVersion};
  SolutionStatus status = SolutionStatus::Ok;
  std::string message;
  std::optional<Branch> branch;
  std::optional<Realization> X, Psi, F;
  std::optional<CMatrix> U;
  Diagnostics diagnostics;
};

struct FactorFile {
  std::string schema_version{kSchemaVersion};
  CMatrix Q;
  Realization phi;
  Realization phi_inv;
  double riccati_residual = 0.0;
  double closed_loop_spectral_radius = 0.0;
};

/// Parse errors throw Error(ErrorCode::Parse).
ProblemFile parse_problem(std::string_view text);
std::string write_problem(const ProblemFile& problem);

SolutionFile parse_solution(std::string_view text);
std::string write_solution(const SolutionFile& solution);

SymbolR parse_symbol(std::string_view text);
std::string write_symbol(const SymbolR& sym);

std::string write_factor(const FactorFile& factor);

/// Problem with G = (1/sqrt 2)[1 1] and K = z/2 (A = 0, C = 1, B1 = 0,
/// D1 = [1 1]/sqrt 2, B2 = 1/2, D2 = 0).
ProblemFile example_problem();

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace leech::io
