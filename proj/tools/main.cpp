// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "spatialcs/cli.hpp"

int main(int argc, char** argv)
{
    return spatialcs::cli::run(argc, argv, std::cout, std::cerr);
}
