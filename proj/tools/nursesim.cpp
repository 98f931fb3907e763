#include <iostream>

#include "nursesim/cli.hpp"

int main(int argc, char** argv) {
    return nursesim::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
