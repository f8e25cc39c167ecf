#include <iostream>

#include "l1opt/cli.hpp"

int main(int argc, char** argv) {
  return l1opt::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
