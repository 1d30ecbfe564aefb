#include "ricci/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return ricci::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
