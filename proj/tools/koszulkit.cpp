#include <iostream>

#include "koszulkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return koszulkit::run_cli(args, std::cout, std::cerr);
}
