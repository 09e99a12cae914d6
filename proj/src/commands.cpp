#include "leech/commands.hpp"

#include "leech/io.hpp"
#include "leech/solver.hpp"

namespace leech::cli {

namespace {

void print_diagnostics(std::ostream& out, const Diagnostics& d) {
  out << "  solvability margin:        " << d.solvability_margin << "\n"
      << "  Leech residual:            " << d.leech_residual << "\n"
      << "  contraction margin:        " << d.contraction_margin << "\n"
      << "  Riccati residual:          " << d.riccati_residual << "\n"
      << "  partial isometry residual: " << d.partial_isometry_residual << "\n"
      << "  minimal realization:       "
      << (d.minimality.minimal() ? "yes" : "no") << "\n";
}

}  // namespace

int cmd_solve(const std::filesystem::path& input,
              const std::filesystem::path& output, const SolveFlags& flags,
              std::ostream& out, std::ostream& err) {
  io::ProblemFile problem;
  try {
    problem = io::parse_problem(io::read_text(input));
    problem.data.validate();
  } catch (const Error& e) {
    err << "leech solve: " << e.what() << "\n";
    return kInputError;
  }

  SolveOptions opts;
  if (problem.options) {
    const auto& o = *problem.options;
    if (o.tol) opts.tol = *o.tol;
    if (o.grid) opts.grid = *o.grid;
    if (o.max_iter) opts.max_iter = *o.max_iter;
    if (o.allow_nonminimal) opts.allow_nonminimal = *o.allow_nonminimal;
  }
  if (flags.tol) opts.tol = *flags.tol;
  if (flags.grid) opts.grid = *flags.grid;

  io::SolutionFile file;
  int code = kOk;
  try {
    const LeechSolution sol = solve(problem.data, opts);
    file.branch = sol.branch;
    file.X = sol.X;
    file.Psi = sol.Psi;
    file.F = sol.F;
    file.U = sol.U;
    file.diagnostics = sol.diagnostics;
  } catch (const SolveError& e) {
    file.message = e.what();
    file.diagnostics = e.diagnostics();
    file.branch = e.diagnostics().branch;
    switch (e.code()) {
      case ErrorCode::NotSolvable:
        file.status = io::SolutionStatus::NotSolvable;
        code = kNotSolvable;
        break;
      case ErrorCode::SemidefiniteUnsupported:
        file.status = io::SolutionStatus::SemidefiniteUnsupported;
        code = kSemidefiniteUnsupported;
        break;
      default:
        err << "leech solve: " << e.what() << "\n";
        return kInputError;
    }
    err << "leech solve: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "leech solve: " << e.what() << "\n";
    return kInputError;
  }

  try {
    io::write_text(output, io::write_solution(file));
  } catch (const Error& e) {
    err << "leech solve: " << e.what() << "\n";
    return kInputError;
  }
  for (const auto& w : file.diagnostics.warnings) err << "warning: " << w << "\n";
  out << "status: " << io::to_string(file.status) << "\n";
  if (file.branch) out << "branch: " << to_string(*file.branch) << "\n";
  print_diagnostics(out, file.diagnostics);
  return code;
}

int cmd_check(const std::filesystem::path& problem_path,
              const std::filesystem::path& solution_path, int grid,
              std::ostream& out, std::ostream& err) {
  try {
    const io::ProblemFile problem = io::parse_problem(io::read_text(problem_path));
    problem.data.validate();
    const io::SolutionFile solution =
        io::parse_solution(io::read_text(solution_path));
    if (!solution.X) {
      err << "leech check: solution file has no X realization\n";
      return kInputError;
    }
    const Realization& X = *solution.X;
    const auto& d = problem.data;
    if (X.outputs() != d.p() || X.inputs() != d.q()) {
      err << "leech check: X is " << X.outputs() << "x" << X.inputs()
          << " but the problem needs " << d.p() << "x" << d.q() << "\n";
      return kInputError;
    }
    const double residual = leech_residual(d, X, grid);
    const double norm = hinf_norm_grid(X, grid);
    out << "Leech residual: " << residual << "\n"
        << "grid sup-norm of X: " << norm << "\n";
    const bool pass = residual < 1e-6 && norm <= 1.0 + 1e-6;
    out << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kOk : kCheckFailed;
  } catch (const Error& e) {
    err << "leech check: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_example(const std::filesystem::path& output, std::ostream& err) {
  try {
    io::write_text(output, io::write_problem(io::example_problem()));
  } catch (const Error& e) {
    err << "leech example: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_factor(const std::filesystem::path& input,
               const std::filesystem::path& output, std::ostream& out,
               std::ostream& err) {
  SymbolR sym;
  try {
    sym = io::parse_symbol(io::read_text(input));
    sym.validate();
  } catch (const Error& e) {
    err << "leech factor: " << e.what() << "\n";
    return kInputError;
  }
  io::FactorFile file;
  try {
    file.Q = riccati_stabilizing(sym);
    const SpectralFactor sf = outer_factor(sym, file.Q);
    file.phi = sf.phi;
    file.phi_inv = sf.phi_inv;
    file.riccati_residual = riccati_residual(sym, file.Q);
    file.closed_loop_spectral_radius = spectral_radius(sf.Ax);
  } catch (const Error& e) {
    err << "leech factor: " << e.what() << "\n";
    return e.code() == ErrorCode::NoStabilizingSolution ||
                   e.code() == ErrorCode::NotStabilizing
               ? kSemidefiniteUnsupported
               : kInputError;
  }
  try {
    io::write_text(output, io::write_factor(file));
  } catch (const Error& e) {
    err << "leech factor: " << e.what() << "\n";
    return kInputError;
  }
  out << "Riccati residual: " << file.riccati_residual << "\n"
      << "closed-loop spectral radius: " << file.closed_loop_spectral_radius
      << "\n";
  return kOk;
}

}  // namespace leech::cli
