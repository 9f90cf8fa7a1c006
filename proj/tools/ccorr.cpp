#include <iostream>

#include "ccorr/harness/cli.hpp"

int main(int argc, char** argv) { return ccorr::harness::cli_main(argc, argv, std::cout, std::cerr); }
