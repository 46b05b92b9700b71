#include <iostream>

#include "proofsynth/cli.hpp"

int main(int argc, char** argv) {
  return proofsynth::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
