#include <iostream>

#include "rulemine/cli.hpp"

int main(int argc, char** argv) { return rulemine::cli::run(argc, argv, std::cout, std::cerr); }
