#include <iostream>
#include <string>
#include <vector>

#include "otto/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return otto::cli::main_entry(std::move(args), std::cout, std::cerr);
}
