#include <iostream>

#include "amenalab/cli.hpp"

int main(int argc, char** argv) { return amenalab::run_cli(argc, argv, std::cout, std::cerr); }
