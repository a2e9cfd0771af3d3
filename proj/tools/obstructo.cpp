#include <iostream>

#include "obstructo/cli.hpp"

int main(int argc, char** argv) { return obstructo::run_cli(argc, argv, std::cout, std::cerr); }
