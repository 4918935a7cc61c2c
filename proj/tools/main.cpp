#include <iostream>

#include "chevmod/cli.hpp"

int main(int argc, char** argv) { return chevmod::cli::main_entry(argc, argv, std::cout, std::cerr); }
