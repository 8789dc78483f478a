#include "pats/cli.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  try {
    return pats::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "pats: " << e.what() << '\n';
    return pats::cli::kUsage;
  }
}
