#include <iostream>

#include "erlab/cli/cli.hpp"

int main(int argc, char** argv) { return erlab::cli::dispatch(argc, argv, std::cout, std::cerr); }
