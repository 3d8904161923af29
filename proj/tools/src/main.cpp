#include <iostream>
#include <string>
#include <vector>

#include "footfall/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return footfall::cli::Main(args, std::cout, std::cerr);
}
