#include <iostream>

#include "possibilistic/cli.hpp"

int main(int argc, char** argv) { return possibilistic::cli::run(argc, argv, std::cout, std::cerr); }
