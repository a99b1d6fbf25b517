#include <iostream>

#include "quatgroup/cli.hpp"

int main(int argc, char** argv) { return quatgroup::cli::run(argc, argv, std::cout, std::cerr); }
