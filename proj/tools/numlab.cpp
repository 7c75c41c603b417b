#include <iostream>

#include "numlab/cli.hpp"

int main(int argc, char** argv) { return numlab::cli::run(argc, argv, std::cout, std::cerr); }
