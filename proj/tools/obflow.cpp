#include <iostream>

#include "obflow/cli.hpp"

int main(int argc, char** argv) { return obflow::cli::run(argc, argv, std::cout, std::cerr); }
