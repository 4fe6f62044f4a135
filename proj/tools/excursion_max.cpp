// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "exmax/cli.hpp"

int main(int argc, char** argv) {
  return exmax::cli::run(argc, argv, std::cout, std::cerr);
}
