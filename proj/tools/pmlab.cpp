#include <iostream>

#include "pmlab/cli.hpp"

int main(int argc, char** argv) { return pmlab::run_cli(argc, argv, std::cout, std::cerr); }
