#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "leech/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stable rational solutions of the Leech problem G X = K, ||X|| <= 1"};
  app.require_subcommand(1);

  std::string solve_in, solve_out;
  leech::cli::SolveFlags flags;
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  solve->add_option("input", solve_in, "problem file")->required();
  solve->add_option("-o,--output", solve_out, "solution file")->required();
  solve->add_option("--tol", flags.tol, "solvability tolerance");
  solve->add_option("--grid", flags.grid, "circle grid size")
      ->check(CLI::Range(16, 1 << 22));

  std::string check_problem, check_solution;
  int check_grid = 4096;
  auto* check = app.add_subcommand("check", "verify a solution against a problem");
  check->add_option("problem", check_problem, "problem file")->required();
  check->add_option("solution", check_solution, "solution file")->required();
  check->add_option("--grid", check_grid, "circle grid size")
      ->check(CLI::Range(16, 1 << 22));

  std::string example_out;
  auto* example = app.add_subcommand("example", "write the built-in example problem");
  example->add_option("-o,--output", example_out, "problem file")->required();

  std::string factor_in, factor_out;
  auto* factor = app.add_subcommand("factor", "outer spectral factor of a symbol file");
  factor->add_option("input", factor_in, "symbol file")->required();
  factor->add_option("-o,--output", factor_out, "factor file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : leech::cli::kInputError;
  }

  if (*solve) {
    return leech::cli::cmd_solve(solve_in, solve_out, flags, std::cout, std::cerr);
  }
  if (*check) {
    return leech::cli::cmd_check(check_problem, check_solution, check_grid,
                                 std::cout, std::cerr);
  }
  if (*example) return leech::cli::cmd_example(example_out, std::cerr);
  return leech::cli::cmd_factor(factor_in, factor_out, std::cout, std::cerr);
}
