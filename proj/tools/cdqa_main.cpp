#include <iostream>
#include <string>
#include <vector>

#include "cdqa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cdqa::run_cli(args, std::cout, std::cerr);
}
