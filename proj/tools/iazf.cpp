#include <iostream>

#include "iazf/cli.hpp"

int main(int argc, char** argv) {
    return iazf::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
