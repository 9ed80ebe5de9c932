#include "shallowwell/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return shallowwell::cli::run(argc, argv, std::cout, std::cerr);
}
