#include "chamber/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return chamber::cli::dispatch(argc, argv, std::cout, std::cerr); }
