#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "hypcyl/acceptance.hpp"

int main(int argc, char** argv) {
    hypcyl::acceptance::Options opts;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            opts.master_seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (arg == "--workers" && i + 1 < argc) {
            opts.workers = std::atoi(argv[++i]);
        } else if (arg == "--only" && i + 1 < argc) {
            opts.only.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: hypcyl-acceptance [--seed S] [--workers W] [--only ID]...\n";
            return 2;
        }
    }
    const auto results = hypcyl::acceptance::run(opts, std::cout);
    const bool ok = hypcyl::acceptance::all_passed(results);
    std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << results.size()
              << " run)\n";
    return ok ? 0 : 1;
}
