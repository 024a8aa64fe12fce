#include <iostream>

#include "nrange/cli.hpp"

int main(int argc, char** argv) { return nrange::cli::run(argc, argv, std::cout, std::cerr); }
