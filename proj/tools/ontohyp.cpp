#include <iostream>

#include "ontohyp/cli.hpp"

int main(int argc, char** argv) {
  return ontohyp::run_cli(argc, argv, std::cout, std::cerr);
}
