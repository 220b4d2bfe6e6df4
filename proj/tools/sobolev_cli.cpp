#include <iostream>

#include "sobolev/cli.hpp"

int main(int argc, char** argv) {
  return sobolev::cli::run(argc, argv, std::cout, std::cerr);
}
