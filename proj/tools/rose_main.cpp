#include <iostream>

#include "rose/cli.hpp"
#include "rose/error.hpp"

int main(int argc, char** argv) {
    rose::cli::JobConfig config;
    try {
        config = rose::cli::parse_command_line(argc, argv);
    } catch (const rose::cli::HelpRequested& help) {
        std::cout << help.text;
        return rose::cli::kExitOk;
    } catch (const rose::ValidationError& e) {
        std::cerr << "rose: " << e.what() << '\n';
        return rose::cli::kExitValidation;
    }
    const auto result = rose::cli::run(config);
    std::cout << result.document;
    return result.exit_code;
}
