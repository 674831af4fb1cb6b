#include <iostream>

#include "unext/tools/app.hpp"

int main(int argc, char** argv) { return unext::tools::run_cli(argc, argv, std::cout, std::cerr); }
