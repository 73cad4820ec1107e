#include <iostream>

#include "dbrlab/cli.hpp"

int main(int argc, char** argv) {
    return dbrlab::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
