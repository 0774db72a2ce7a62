/* main.cpp -- process entry point for the ssa tool */

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ssa::cli_run(std::move(args), std::cin, std::cout, std::cerr);
}
