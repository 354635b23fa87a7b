#include <iostream>

#include "cutting_forge/cli.hpp"

int main(int argc, char** argv) { return cutting_forge::run_cli(argc, argv, std::cout, std::cerr); }
