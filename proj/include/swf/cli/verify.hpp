#pragma once

// Property suites behind `swfcalc verify`. Each suite draws from its own
// generator seeded by (seed, suite number), so suites are reproducible alone.

#include <cstdint>
#include <string>
#include <vector>

namespace swf::verify {

struct SuiteResult {
    std::string id;   // "i" .. "vi"
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> samples; // first few failure descriptions

    bool passed() const { return failures == 0 && cases > 0; }
};

struct Options {
    int iters = 500;
    std::uint64_t seed = 1;
};

SuiteResult ideal_roundtrip(const Options& o);
SuiteResult infinity_oracle(const Options& o);
SuiteResult suspension_duality(const Options& o);
SuiteResult class_inequalities(const Options& o);
SuiteResult report_congruences(const Options& o);
SuiteResult moy_ledger(const Options& o);

std::vector<SuiteResult> run_all(const Options& o);

} // namespace swf::verify
