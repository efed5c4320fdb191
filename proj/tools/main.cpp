#include <iostream>
#include <string>
#include <vector>

#include "stochoptics/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return stochoptics::cli::run(args, std::cout, std::cerr);
}
