#include <iostream>

#include "gripkit/cli.hpp"

int main(int argc, char** argv) { return gripkit::cli::run(argc, argv, std::cout, std::cerr); }
