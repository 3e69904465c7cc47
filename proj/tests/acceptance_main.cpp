#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "partcat/acceptance.hpp"

int main(int argc, char** argv) {
    partcat::AcceptanceOptions opts;
    CLI::App app{"Acceptance criteria, one PASS/FAIL line each", "acceptance"};
    app.add_option("--seed", opts.seed, "seed for randomized checks");
    app.add_option("--jobs", opts.jobs, "worker count compared against one worker")->check(CLI::Range(1, 256));
    CLI11_PARSE(app, argc, argv);
    int failed = 0;
    partcat::run_acceptance(opts, [&](const partcat::CriterionResult& r) {
        std::cout << r.line() << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::endl;
        failed += !r.passed;
    });
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
