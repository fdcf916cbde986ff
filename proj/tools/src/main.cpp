#include <iostream>

#include "chabauty/cli/commands.hpp"

int main(int argc, char** argv) { return chabauty::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
