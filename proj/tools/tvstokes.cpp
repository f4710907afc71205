#include <iostream>

#include "tvstokes/cli.hpp"

int main(int argc, char** argv) { return tvstokes::run_cli(argc, argv, std::cout, std::cerr); }
