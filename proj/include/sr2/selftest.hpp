#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// The acceptance suite: one entry per criterion, each reporting a single
// pass/fail line plus detail. Returned results are printed by the CLI
// `selftest` subcommand and by the standalone acceptance binary.

namespace sr2::selftest {

struct Config {
    std::uint64_t seed = 0;
    int random_identities = 100000;  // size of the randomized comparison suites
    std::string corpus_dir = "proofs/corpus";
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_all(const Config& cfg);

// Prints one line per criterion and a summary; returns the failure count.
int run_and_report(const Config& cfg, std::ostream& os);

}  // namespace sr2::selftest
