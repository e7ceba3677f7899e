#include <iostream>

#include "hahnchain/cli.hpp"

int main(int argc, char** argv) {
  return hahnchain::cli::main(argc, argv, std::cout, std::cerr);
}
