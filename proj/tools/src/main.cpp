#include <iostream>

#include "erdiff/cli.hpp"

int main(int argc, char** argv) { return erdiff::cli::run(argc, argv, std::cout, std::cerr); }
