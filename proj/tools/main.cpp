#include <iostream>

#include "feq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return feq::cli::run(args, std::cout, std::cerr);
}
