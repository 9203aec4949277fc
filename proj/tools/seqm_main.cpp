#include <iostream>
#include <string>
#include <vector>

#include "seqm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return seqm::run_cli(args, std::cout, std::cerr);
}
