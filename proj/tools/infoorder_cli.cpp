#include <iostream>

#include "infoorder/cli.hpp"

int main(int argc, char** argv) {
  return infoorder::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
