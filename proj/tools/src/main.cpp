#include <iostream>

#include "relaxden_cli/commands.hpp"

int main(int argc, char** argv) {
  return relaxden::cli::run(argc, argv, std::cout, std::cerr);
}
