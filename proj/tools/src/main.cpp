#include <iostream>

#include "traintrack_tools/commands.hpp"

int main(int argc, char** argv) {
  return traintrack::tools::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
