// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "sepvol/cli.hpp"

int main(int argc, char** argv) { return sepvol::cli::main_entry(argc, argv, std::cout, std::cerr); }
