#pragma once

#include "qdiv/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdiv::lab {

enum class Verdict { preserved, violated, inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// A pair of inputs on which the tested identity fails, with the deviation
/// observed when it was found.
struct Witness {
    Matrix a;
    Matrix b;
    double deviation = 0.0;
};

struct TrialRecord {
    int index = 0;
    double deviation = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    Index dim = 0;
    std::uint64_t seed = 0;
    int trials = 0;
    double max_deviation = 0.0;
    double max_relative_deviation = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::optional<Verdict> expected;
    std::optional<Witness> witness;
    std::vector<TrialRecord> records;
    std::vector<ExperimentReport> parts;
    std::map<std::string, double> metrics;
    std::string note;

    /// verdict == expected when an expectation is set, otherwise the verdict
    /// is not "violated"; parts must pass as well.
    bool passed() const;
};

/// Folds parts into an aggregate: max deviations, and a verdict that is
/// violated if any part is, inconclusive if any part is, preserved otherwise.
ExperimentReport aggregate(std::string name, Index dim, std::uint64_t seed, std::vector<ExperimentReport> parts);

} // namespace qdiv::lab
