#include <iostream>
#include <string>
#include <vector>

#include "torweyl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return torweyl::run(args, std::cout, std::cerr);
}
