#include <iostream>

#include "albsim/cli/commands.hpp"

int main(int argc, char** argv) {
  return albsim::cli::main_entry(argc, argv, std::cout, std::cerr);
}
