#include <iostream>

#include "ghzw/cli.hpp"

int main(int argc, char** argv) { return ghzw::cli::run(argc, argv, std::cout, std::cerr); }
