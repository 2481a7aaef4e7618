#include <iostream>

#include "qtwist/cli.hpp"

int main(int argc, char** argv) {
  return qtwist::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
