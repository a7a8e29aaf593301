#include <iostream>

#include "glacier/cli.hpp"

int main(int argc, char** argv) { return glacier::cli::run(argc, argv, std::cout, std::cerr); }
