#include <iostream>
#include <string>
#include <vector>

#include "coalg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return coalg::run_cli(args, std::cin, std::cout, std::cerr);
}
