#include <iostream>

#include "fcl/cli.hpp"

int main(int argc, char** argv) { return fcl::main_entry(argc, argv, std::cout, std::cerr); }
