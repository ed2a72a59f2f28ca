#include "wigner/cli_io.hpp"

#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const wigner::ParseResult parsed = wigner::parse_args(args);
        switch (parsed.action) {
            case wigner::ParseResult::Action::help:
                std::cout << parsed.message;
                return 0;
            case wigner::ParseResult::Action::usage_error:
                std::cerr << "error: " << parsed.message << '\n'
                          << "run 'wigner --help' for usage\n";
                return 2;
            case wigner::ParseResult::Action::run:
                return wigner::run_command(parsed.config, std::cout, std::cerr);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
