#include <string>
#include <vector>

#include "prolate/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return prolate::cli::dispatch(std::move(args));
}
