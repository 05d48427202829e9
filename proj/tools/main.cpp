#include <iostream>

#include "shiftcert/cli.hpp"

int main(int argc, char** argv) {
  return shiftcert::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
