#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "cflab/experiments.hpp"

int main(int argc, char** argv) {
    using namespace cflab;
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        ExperimentConfig cfg = parse_flags(args);
        RunResult result = run(cfg);
        if (!result.stdout_text.empty()) std::cout << result.stdout_text;
        write_report(result, cfg);
        return result.exit_code;
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "cflab: " << e.what() << "\n"
                  << "run 'cflab --help' for usage\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cflab: " << e.what() << "\n";
        return 3;
    }
}
