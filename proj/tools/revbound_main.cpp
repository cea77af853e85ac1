#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "revbound/cli.hpp"

int main(int argc, char** argv) {
  const bool color = ::isatty(STDOUT_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
  return revbound::run_cli(argc, argv, std::cout, std::cerr, color);
}
