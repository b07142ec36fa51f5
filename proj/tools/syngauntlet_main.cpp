#include <iostream>
#include <string>
#include <vector>

#include "syngauntlet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return syngauntlet::run_cli(args, std::cout, std::cerr);
}
