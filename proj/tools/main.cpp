#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> max_terms;
    if (const char* env = std::getenv("BOGOLAT_MAX_TERMS")) max_terms = env;
    return bogolat::cli::run(args, std::cout, std::cerr, max_terms);
}
