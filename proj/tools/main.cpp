#include <iostream>
#include <string>
#include <vector>

#include "seqforms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return seqforms::cli::run(args, std::cout, std::cerr);
}
