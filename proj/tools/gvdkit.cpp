#include <iostream>

#include "gvdkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gvdkit::run_command(args, std::cout, std::cerr);
}
