#include <iostream>

#include "paramaudit/cli.hpp"

int main(int argc, char** argv) { return paramaudit::cli::run(argc, argv, std::cout, std::cerr); }
