#include <iostream>
#include <string>
#include <vector>

#include "dephasing/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dephasing::cli::run(args, std::cout, std::cerr);
}
