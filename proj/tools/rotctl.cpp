#include <iostream>

#include "rotctl/cli.hpp"

int main(int argc, char** argv) { return rotctl::cli::run(argc, argv, std::cout, std::cerr); }
