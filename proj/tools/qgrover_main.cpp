#include <iostream>
#include <string>
#include <vector>

#include "qgrover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qgrover::cli::run(args, std::cout, std::cerr);
}
