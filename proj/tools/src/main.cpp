#include <iostream>

#include "equiwitt_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return equiwitt::cli::run(args, std::cout, std::cerr);
}
