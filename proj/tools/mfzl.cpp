#include "mfzl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mfzl::cli::run(argc, argv, std::cout, std::cerr); }
