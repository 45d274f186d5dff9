/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <iostream>

#include "uqc/cli_app.hpp"

int main(int argc, char** argv) {
  return uqc::cli::run(argc, argv, std::cout, std::cerr);
}
