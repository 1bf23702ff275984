#include "luce/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return luce::cli::run(argc, argv, std::cout, std::cerr);
}
