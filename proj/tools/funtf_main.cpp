#include <iostream>

#include "funtf/cli.hpp"

int main(int argc, char** argv) { return funtf::cli::run(argc, argv, std::cout, std::cerr); }
