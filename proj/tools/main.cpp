#include <iostream>

#include "holderspec/cli.hpp"

int main(int argc, char** argv) {
  return holderspec::run(argc, argv, std::cout, std::cerr);
}
