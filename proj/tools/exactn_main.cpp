#include <iostream>
#include <string>
#include <vector>

#include "exactn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return exactn::cli_main(args, std::cout, std::cerr);
}
