#include <iostream>
#include <string>
#include <vector>

#include "peerroles/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return peerroles::cli::run(args, std::cout, std::cerr);
}
