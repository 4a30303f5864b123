#include <iostream>

#include "erisk/cli.hpp"

int main(int argc, char** argv) { return erisk::cli::run(argc, argv, std::cout, std::cerr); }
