#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const char* solver = std::getenv("PLOTTING_SOLVER");
  return plotting::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, solver ? solver : "");
}
