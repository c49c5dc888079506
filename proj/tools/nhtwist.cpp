#include <iostream>

#include "nhtwist/cli.hpp"

int main(int argc, char** argv) { return nhtwist::cli::run(argc, argv, std::cout, std::cerr); }
