#include <cstdlib>
#include <iostream>

#include "sr2/selftest.hpp"

// Standalone acceptance runner: one line per criterion, nonzero exit if
// any criterion fails.

int main(int argc, char** argv) {
    sr2::selftest::Config cfg;
    if (const char* dir = std::getenv("SR2_CORPUS_DIR")) cfg.corpus_dir = dir;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--seed") cfg.seed = std::strtoull(argv[i + 1], nullptr, 10);
        if (flag == "--random") cfg.random_identities = std::atoi(argv[i + 1]);
        if (flag == "--corpus") cfg.corpus_dir = argv[i + 1];
    }
    try {
        return sr2::selftest::run_and_report(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 99;
    }
}
