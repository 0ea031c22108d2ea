#include <iostream>

#include "polaris/cli/commands.hpp"

int main(int argc, char** argv) { return polaris::cli::run_cli(argc, argv, std::cout, std::cerr); }
