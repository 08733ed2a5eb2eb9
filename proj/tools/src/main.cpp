#include <iostream>

#include "medial/cli.hpp"

int main(int argc, char** argv) {
  return medial::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
