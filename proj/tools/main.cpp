#include <iostream>

#include "clr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return clr::run_cli(args, std::cout, std::cerr);
}
