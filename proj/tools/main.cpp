#include <iostream>
#include <string>
#include <vector>

#include "mho/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mho::cli::run(args, std::cout, std::cerr);
}
