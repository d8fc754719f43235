#include <iostream>

#include "fraccalc/cli.hpp"

int main(int argc, char** argv) {
  return fraccalc::cli::run(argc, argv, std::cout, std::cerr);
}
