#include <iostream>

#include "spa/mgr/cli.hpp"

int main(int argc, char** argv) {
  return spa::mgr::cliMain(argc, argv, std::cout, std::cerr);
}
