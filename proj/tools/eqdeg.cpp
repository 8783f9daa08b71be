#include <iostream>

#include "eqdeg/cli.hpp"

int main(int argc, char** argv) {
    return eqdeg::run_cli({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
