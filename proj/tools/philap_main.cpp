#include <iostream>

#include "philap/cli/commands.hpp"

int main(int argc, char** argv) { return philap::cli::run(argc, argv, std::cout, std::cerr); }
