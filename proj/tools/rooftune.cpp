#include <iostream>
#include <string>
#include <vector>

#include "rooftune/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rooftune::cli::run_cli(args, std::cout, std::cerr);
}
