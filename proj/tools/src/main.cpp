#include <iostream>
#include <string>
#include <vector>

#include "cpmetric_cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cpmetric::cli::run(args, std::cout, std::cerr);
}
