#include <iostream>
#include <string>
#include <vector>

#include "h1pick/cli_io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return h1pick::run(args, std::cout, std::cerr);
}
