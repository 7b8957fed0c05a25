#include <iostream>
#include <string>
#include <vector>

#include "dpp/cli.hpp"

int main(int argc, char** argv) {
  return dpp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
