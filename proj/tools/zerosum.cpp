#include <iostream>
#include <vector>

#include "zerosum/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return zerosum::cli::run(args, std::cout, std::cerr);
}
