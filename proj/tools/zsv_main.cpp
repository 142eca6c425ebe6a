#include <iostream>

#include "zsv/cli.hpp"

int main(int argc, char** argv) { return zsv::run_cli(argc, argv, std::cout, std::cerr); }
