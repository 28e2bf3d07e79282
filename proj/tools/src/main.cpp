#include <iostream>

#include "framelab_tools/commands.hpp"

int main(int argc, char** argv) { return framelab::cli::run(argc, argv, std::cout, std::cerr); }
