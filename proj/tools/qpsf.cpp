#include <iostream>

#include "qpsf/cli.hpp"

int main(int argc, char** argv) { return qpsf::cli::run(argc, argv, std::cout, std::cerr); }
