#include <iostream>

#include "smclab/cli.hpp"

int main(int argc, char** argv) { return smclab::run_cli(argc, argv, std::cout, std::cerr); }
