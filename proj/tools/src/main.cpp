#include <iostream>

#include "trailorient/cli.hpp"

int main(int argc, char** argv) { return trailorient::cli::run(argc, argv, std::cout, std::cerr); }
