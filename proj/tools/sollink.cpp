#include "sollink/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    sollink::RunResult r = sollink::run_cli(argc, argv);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
