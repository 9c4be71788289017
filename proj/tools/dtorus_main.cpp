#include "dtorus/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return dtorus::cli::run_cli(argc, argv, std::cout, std::cerr);
}
