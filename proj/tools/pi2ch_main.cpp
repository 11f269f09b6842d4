#include <iostream>

#include "pi2ch/cli/commands.hpp"

int main(int argc, char** argv) { return pi2ch::cli::run(argc, argv, std::cout, std::cerr); }
