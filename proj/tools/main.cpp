#include <iostream>
#include <vector>

#include "ubeta/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ubeta::run_cli(args, std::cout, std::cerr);
}
