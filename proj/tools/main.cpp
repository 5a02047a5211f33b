#include <iostream>
#include <vector>

#include "epiplex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epiplex::run(args, std::cin, std::cout, std::cerr);
}
