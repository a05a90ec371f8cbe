#include <iostream>
#include <string>
#include <vector>

#include "hgk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hgk::cli::run_command(args, std::cout, std::cerr);
}
