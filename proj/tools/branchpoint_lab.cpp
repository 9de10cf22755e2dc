#include <iostream>

#include "branchpoint/cli.hpp"

int main(int argc, char** argv) { return branchpoint::run_cli(argc, argv, std::cout, std::cerr); }
