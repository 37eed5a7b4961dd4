#include <iostream>
#include <string>
#include <vector>

#include "trel/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return trel::cli::run(args, std::cout, std::cerr);
}
