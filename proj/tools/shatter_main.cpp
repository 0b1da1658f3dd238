#include <iostream>
#include <string>
#include <vector>

#include "shatter/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return shatter::cli::run(args, std::cout, std::cerr);
}
