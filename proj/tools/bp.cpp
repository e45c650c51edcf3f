#include <iostream>

#include "bp/cli.hpp"

int main(int argc, char** argv) { return bp::cli::run(argc, argv, std::cout, std::cerr); }
