#include <iostream>
#include <vector>

#include "jacstab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return jacstab::run_cli(args, std::cout, std::cerr);
}
