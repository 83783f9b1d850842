#include <iostream>
#include <string>
#include <vector>

#include "bcml/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bcml::cli::run(args, std::cout, std::cerr);
}
