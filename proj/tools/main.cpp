#include "qcpat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return qcpat::cli_main(argc, argv, std::cout, std::cerr);
}
