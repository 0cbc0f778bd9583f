#pragma once

#include "tcat/io.hpp"

namespace tcat {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    Json truncation;

    bool ok() const;
    int failures() const;
    Json to_json() const;
    // One line per check, then a summary; failing runs end with the first failure.
    std::string text() const;
};

struct RunOptions {
    std::optional<int> trunc;  // overrides the manifest and the per-suite default
};

// identities iso112 iso114 retractions oplax contractibility invariance
const std::vector<std::string>& suite_names();
int default_truncation(const std::string& suite);

// Throws InputError for an unknown suite or a bad inject entry.
SuiteReport verify(const std::string& suite, const Manifest& m, const RunOptions& opt = {});

}  // namespace tcat
