#include <iostream>

#include "cantordiff/cli.hpp"

int main(int argc, char** argv) { return cantordiff::run(argc, argv, std::cout, std::cerr); }
