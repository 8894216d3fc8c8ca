#include "rdf_forge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return rdf_forge::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
