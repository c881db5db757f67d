#include "eit_qnlse/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return eitq::run_cli(argc, argv, std::cout, std::cerr);
}
