#include <iostream>

#include "findim/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return findim::run_command(args, std::cout, std::cerr);
}
