#include "collatz/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return collatz::cli::run(argc, argv, std::cout, std::cerr);
}
