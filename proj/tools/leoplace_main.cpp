#include <iostream>

#include "leoplace/cli.hpp"

int main(int argc, char** argv) {
  return leoplace::cli::run_cli(argc, argv, std::cout, std::cerr);
}
