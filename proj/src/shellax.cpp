#include "shellax/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return shellax::cli::run(argc, argv, std::cout, std::cerr); }
