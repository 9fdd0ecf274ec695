#include <iostream>
#include <string>
#include <vector>

#include "landau/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return landau::run_cli(args, std::cout, std::cerr);
}
