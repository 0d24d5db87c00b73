// Reads a DIMACS CNF file and prints SAT-competition output using the
// built-in DPLL solver.
#include <fstream>
#include <iostream>

#include "plotting/cnf.hpp"
#include "plotting/error.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: plotting-sat FILE.cnf\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 1;
  }
  try {
    const auto formula = plotting::cnf::parse_dimacs(in);
    const auto outcome = plotting::cnf::dpll_solve(formula);
    if (const auto* sat = std::get_if<plotting::cnf::Sat>(&outcome)) {
      std::cout << "s SATISFIABLE\nv";
      for (std::uint32_t v = 1; v <= formula.var_count(); ++v) std::cout << ' ' << (sat->model[v] ? "" : "-") << v;
      std::cout << " 0\n";
      return 10;
    }
    if (std::holds_alternative<plotting::cnf::Unsat>(outcome)) {
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    }
    std::cout << "s UNKNOWN\n";
    return 0;
  } catch (const plotting::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}
