#include <iostream>

#include "ahfsr/cli/commands.hpp"

int main(int argc, char** argv) {
  return ahfsr::cli::run(argc, argv, std::cout, std::cerr);
}
