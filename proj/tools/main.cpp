#include <iostream>

#include "tanaka/cli.hpp"

int main(int argc, char** argv) {
  return tanaka::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
