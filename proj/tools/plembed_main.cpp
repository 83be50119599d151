#include <iostream>
#include <string>
#include <vector>

#include "plembed/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return plembed::cli::run(args, std::cout, std::cerr);
}
