#include <iostream>

#include "focml/cli.hpp"

int main(int argc, char** argv) {
  return focml::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
