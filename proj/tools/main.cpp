#include <iostream>

#include "pathsel/cli.hpp"

int main(int argc, char** argv) {
  return pathsel::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
