#pragma once

// Subcommands of the `leech` executable, callable in-process.

#include <filesystem>
#include <optional>
#include <ostream>

namespace leech::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNotSolvable = 2,
  kSemidefiniteUnsupported = 3,
  kCheckFailed = 4,
};

struct SolveFlags {
  std::optional<double> tol;
  std::optional<int> grid;
};

/// Reads a problem file, solves it and writes a solution file. On exit codes
/// 2 and 3 the solution file still carries the partial diagnostics; on 1
/// nothing is written.
int cmd_solve(const std::filesystem::path& input,
              const std::filesystem::path& output, const SolveFlags& flags,
              std::ostream& out, std::ostream& err);

/// Verifies G X = K and ||X|| <= 1 on the circle grid for a stored solution.
/// Exit 0 iff residual < 1e-6 and norm <= 1 + 1e-6.
int cmd_check(const std::filesystem::path& problem,
              const std::filesystem::path& solution, int grid,
              std::ostream& out, std::ostream& err);

/// Writes the built-in example problem.
int cmd_example(const std::filesystem::path& output, std::ostream& err);

/// Spectral factorization of a symbol file: Q, Phi and Phi^{-1}.
/// Exit 3 when no stabilizing Riccati solution exists.
int cmd_factor(const std::filesystem::path& input,
               const std::filesystem::path& output, std::ostream& out,
               std::ostream& err);

}  // namespace leech::cli
