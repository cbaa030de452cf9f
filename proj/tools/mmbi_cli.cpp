#include <iostream>
#include <string>
#include <vector>

#include "mmbi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mmbi::cli::run(args, std::cout, std::cerr);
}
