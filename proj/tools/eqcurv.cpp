#include "eqcurv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eqcurv::cli::run(argc, argv, std::cout, std::cerr); }
