#include <iostream>

#include "welfarelab/cli.hpp"

int main(int argc, char** argv) {
  return welfarelab::run_cli(argc, argv, std::cout, std::cerr);
}
