// Acceptance runner: one PASS/FAIL line per criterion.
//   symindiv_acceptance               all criteria
//   symindiv_acceptance --criterion N one criterion
// Exit status is 0 iff every selected criterion passed.

#include "symindiv/acceptance.hpp"

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace symindiv::acceptance;
    std::vector<CriterionResult> results;
    if (argc == 3 && std::string(argv[1]) == "--criterion") {
        try {
            results.push_back(run_criterion(std::atoi(argv[2])));
        } catch (const std::exception& e) {
            std::cerr << e.what() << '\n';
            return 2;
        }
    } else if (argc == 1) {
        results = run_all();
    } else {
        std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
        return 2;
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << format_line(r) << '\n';
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
