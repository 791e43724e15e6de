#include <iostream>

#include "magbilap/cli.hpp"

int main(int argc, char** argv) { return magbilap::run_cli(argc, argv, std::cout, std::cerr); }
