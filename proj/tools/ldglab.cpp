// ldglab: batch front end for solving, analyzing, and sweeping Landau-de
// Gennes Q-tensor fields. See README.md for the config formats.

#include <iostream>
#include <vector>

#include <ldg/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ldg::run_cli(std::move(args), std::cout, std::cerr);
}
