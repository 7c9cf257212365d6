#include <iostream>

#include "entlock/cli.hpp"

int main(int argc, char** argv) { return entlock::run_cli(argc, argv, std::cout, std::cerr); }
