#include "easyqg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto outcome = easyqg::cli::run(args);
    std::cout << outcome.out;
    return outcome.exit_code;
}
