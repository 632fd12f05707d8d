#include <iostream>
#include <string>
#include <vector>

#include "cfml/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cfml::cli::run(args, std::cout, std::cerr);
}
