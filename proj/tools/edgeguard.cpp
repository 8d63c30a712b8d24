#include <iostream>
#include <string>
#include <vector>

#include "edgeguard/cli/commands.hpp"

int main(int argc, char** argv) {
  return edgeguard::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
